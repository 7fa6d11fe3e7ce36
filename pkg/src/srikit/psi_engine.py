"""Intersection numbers of psi products on multicolored spaces."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterator

from srikit.decorations import count_fixed_points
from srikit.errors import ConsistencyError, InputError
from srikit.osp import set_partitions
from srikit.profiles import ColorProfile, ExponentProfile, normalize_exponents

METHODS = ("fixed_points", "oracle", "both")


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return 1 if n < 2 else n * factorial(n - 1)


def multinomial(total: int, parts) -> int:
    """``total! / prod(p!)``; zero if a part is negative or the parts miss ``total``."""
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != total:
        return 0
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def _attachments(caps: list[int], spare: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Ways to hang some of ``spare`` labelled unboxed points on blocks with
    room ``caps``; yields ``(extra points per block, number of ways)``."""

    def rec(i, left):
        if i == len(caps):
            yield ()
            return
        for x in range(min(caps[i], left) + 1):
            for rest in rec(i + 1, left - x):
                yield (x,) + rest

    for extra in rec(0, spare):
        yield extra, multinomial(spare, list(extra) + [spare - sum(extra)])


def _color_partitions(e: ExponentProfile, j: int) -> list[tuple[int, tuple[tuple[int, int], ...], int]]:
    """Monochromatic partitions of color ``j`` grouped by shape.

    Non-singleton blocks must hold a boxed point, so the boxed points are
    partitioned and unboxed points either stay single or join a block.
    Blocks with ``k_B - |B| + 1 < 0`` zero the term and are dropped.
    Each entry is ``(sign exponent, ((|B|, k_B), ...) sorted, multiplicity)``.
    """
    pts = list(e.profile.color_range(j))
    boxed = [i for i in pts if e.k(i) > 0]
    spare = len(pts) - len(boxed)
    shapes: Counter = Counter()
    for part in set_partitions(boxed):
        sizes = [len(b) for b in part]
        ks = [e.k_of(b) for b in part]
        caps = [k - size + 1 for size, k in zip(sizes, ks)]
        if any(c < 0 for c in caps):
            continue
        for extra, ways in _attachments(caps, spare):
            blocks = [(size + x, k) for size, k, x in zip(sizes, ks, extra)]
            blocks += [(1, 0)] * (spare - sum(extra))
            sign = sum(size - 1 for size, _ in blocks)
            shapes[(sign, tuple(sorted(blocks)))] += ways
    return [(sign, blocks, mult) for (sign, blocks), mult in sorted(shapes.items())]


def multinomial_oracle(e: ExponentProfile) -> int:
    """Signed sum over monochromatic set partitions of all marked points."""
    total = 0
    per_color = [_color_partitions(e, j) for j in range(e.profile.m)]
    for choice in product(*per_color):
        blocks = [b for _, bl, _ in choice for b in bl]
        term = multinomial(len(blocks) - 3, [k - size + 1 for size, k in blocks])
        if not term:
            continue
        for _, _, mult in choice:
            term *= mult
        total += -term if sum(s for s, _, _ in choice) % 2 else term
    return total


def intersection_number(e: ExponentProfile, method: str = "both") -> int:
    """The intersection number by fixed-point count, oracle, or both (checked equal)."""
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if method == "oracle":
        return multinomial_oracle(e)
    fixed = count_fixed_points(e)
    if method == "both":
        oracle = multinomial_oracle(e)
        if fixed != oracle:
            raise ConsistencyError(f"{e}: fixed points {fixed} != oracle {oracle}")
    return fixed


def normalized(sizes, points: dict[int, int]) -> ExponentProfile:
    return ExponentProfile.from_points(sizes, points, normalize=True)


# -- families ------------------------------------------------------------------


def m0n_profile(ks) -> ExponentProfile:
    """Every point its own color."""
    ks = tuple(ks)
    return ExponentProfile(ColorProfile((1,) * len(ks)), ks)


def border_strip_profile(r: int) -> ExponentProfile:
    """``(psi_1 ... psi_r)^2`` on ``M0[r, r, 3]``."""
    if r < 1:
        raise InputError("r must be positive")
    return ExponentProfile.from_points((r, r, 3), {i: 2 for i in range(1, r + 1)})


def losev_manin_profile(n: int, a: int, b: int, light=()) -> ExponentProfile:
    """``psi_0^a psi_inf^b prod psi_i^{k_i}`` on ``[1, n, 1]``.

    Point 1 is ``0``, points ``2..n+1`` are light, point ``n+2`` is ``inf``.
    """
    light = list(light) + [0] * (n - len(light))
    if len(light) != n or any(k < 0 for k in light) or a < 0 or b < 0:
        raise InputError("bad Losev-Manin exponents")
    if a + b + sum(light) != n - 1:
        raise InputError(f"a + b + sum(light) must equal n - 1 = {n - 1}")
    prof = ColorProfile((1, n, 1))
    ks = [a] + light + [b]
    return ExponentProfile(prof, tuple(normalize_exponents(prof, ks)))


def losev_manin_value(n: int, a: int, b: int, light=()) -> int:
    """Closed form: ``C(n-1, a)``, or 0 once any light exponent is positive."""
    losev_manin_profile(n, a, b, light)  # validates
    return 0 if any(k > 0 for k in light) else comb(n - 1, a)


def merge_colors(e: ExponentProfile, j1: int, j2: int) -> ExponentProfile:
    """Fold color ``j2`` into ``j1``; both must carry only zero exponents."""
    prof = e.profile
    if j1 == j2 or not (0 <= j1 < prof.m and 0 <= j2 < prof.m):
        raise InputError("need two distinct valid colors")
    if e.color_total(j1) or e.color_total(j2):
        raise InputError("merged colors must carry no psi classes")
    if prof.m - 1 < 3:
        raise InputError("merging would leave fewer than 3 colors")
    sizes, rows = [], []
    for j in range(prof.m):
        if j == j2:
            continue
        r = prof.sizes[j] + (prof.sizes[j2] if j == j1 else 0)
        sizes.append(r)
        rows.extend(e.exponents[i - 1] for i in prof.color_range(j))
        if j == j1:
            rows.extend([0] * prof.sizes[j2])
    return ExponentProfile(ColorProfile(tuple(sizes)), tuple(rows))


def color_merge_check(e: ExponentProfile, j1: int, j2: int, method: str = "both") -> bool:
    return intersection_number(e, method) == intersection_number(merge_colors(e, j1, j2), method)
