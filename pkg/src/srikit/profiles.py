"""Color profiles ``[r_1, ..., r_m]`` and exponent vectors of psi products.

Marked points are numbered ``1..n``; color ``j`` (0-based here) owns a
consecutive block of ``r_j`` numbers, in declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from srikit.errors import InputError

COLOR_LETTERS = ("R", "A", "G", "Y", "V")


def color_letter(j: int) -> str:
    return COLOR_LETTERS[j] if j < len(COLOR_LETTERS) else f"C{j + 1}"


@dataclass(frozen=True)
class ColorProfile:
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(r) for r in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if len(sizes) < 3:
            raise InputError(f"need at least 3 colors, got {len(sizes)}")
        if any(r <= 0 for r in sizes):
            raise InputError(f"color sizes must be positive: {sizes}")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def m(self) -> int:
        return len(self.sizes)

    @cached_property
    def starts(self) -> tuple[int, ...]:
        """First number of each color."""
        out, s = [], 1
        for r in self.sizes:
            out.append(s)
            s += r
        return tuple(out)

    def color_range(self, j: int) -> range:
        return range(self.starts[j], self.starts[j] + self.sizes[j])

    @cached_property
    def color_of(self) -> tuple[int, ...]:
        """``color_of[i]`` for numbers ``1..n``; index 0 is a -1 placeholder."""
        out = [-1]
        for j, r in enumerate(self.sizes):
            out.extend([j] * r)
        return tuple(out)

    @cached_property
    def crossed_out(self) -> frozenset[int]:
        return frozenset(self.starts[:3])

    def __str__(self):
        return "[" + ",".join(map(str, self.sizes)) + "]"


@dataclass(frozen=True)
class ExponentProfile:
    """A psi product on ``M_{0,[r_1..r_m]}``: ``exponents[i-1]`` is ``k_i``.

    Within each color the positive exponents must sit on the first points
    and be weakly increasing; use :meth:`from_points` with
    ``normalize=True`` to reach that form from arbitrary placement.
    """

    profile: ColorProfile
    exponents: tuple[int, ...]

    def __post_init__(self):
        ks = tuple(int(k) for k in self.exponents)
        object.__setattr__(self, "exponents", ks)
        n = self.profile.n
        if len(ks) != n:
            raise InputError(f"expected {n} exponents, got {len(ks)}")
        if any(k < 0 for k in ks):
            raise InputError("exponents must be nonnegative")
        if sum(ks) != n - 3:
            raise InputError(f"exponents sum to {sum(ks)}, need n-3 = {n - 3}")
        for j in range(self.profile.m):
            row = [ks[i - 1] for i in self.profile.color_range(j)]
            if not _is_canonical_row(row):
                raise InputError(
                    f"color {j + 1} exponents {row} are not in canonical form "
                    "(positive entries first, weakly increasing)"
                )

    @classmethod
    def from_points(
        cls,
        sizes: Sequence[int] | ColorProfile,
        points: Mapping[int, int],
        normalize: bool = False,
    ) -> "ExponentProfile":
        """Build from a sparse ``{point: exponent}`` map (1-indexed points)."""
        profile = sizes if isinstance(sizes, ColorProfile) else ColorProfile(tuple(sizes))
        ks = [0] * profile.n
        for i, k in points.items():
            if not 1 <= i <= profile.n:
                raise InputError(f"point {i} out of range 1..{profile.n}")
            ks[i - 1] += k
        if normalize:
            ks = normalize_exponents(profile, ks)
        return cls(profile, tuple(ks))

    @property
    def n(self) -> int:
        return self.profile.n

    def k(self, i: int) -> int:
        return self.exponents[i - 1]

    @cached_property
    def boxed(self) -> frozenset[int]:
        return frozenset(i for i, k in enumerate(self.exponents, 1) if k > 0)

    @cached_property
    def k_by_number(self) -> tuple[int, ...]:
        """``k_by_number[i] == k(i)`` for ``1..n``; index 0 holds 0."""
        return (0,) + self.exponents

    @cached_property
    def chain_pool(self) -> tuple[tuple[int, ...], ...]:
        """Per color: boxed numbers that are not crossed out."""
        crossed = self.profile.crossed_out
        return tuple(
            tuple(i for i in self.profile.color_range(j) if self.exponents[i - 1] > 0 and i not in crossed)
            for j in range(self.profile.m)
        )

    def ell(self, j: int) -> int:
        """Number of psi classes of color ``j`` in the product."""
        return sum(1 for i in self.profile.color_range(j) if self.exponents[i - 1] > 0)

    def color_total(self, j: int) -> int:
        return sum(self.exponents[i - 1] for i in self.profile.color_range(j))

    def k_of(self, block) -> int:
        return sum(self.exponents[i - 1] for i in block)

    def points(self) -> dict[int, int]:
        return {i: k for i, k in enumerate(self.exponents, 1) if k > 0}

    def __str__(self):
        body = "".join(
            f"psi{i}" + (f"^{k}" if k > 1 else "") for i, k in self.points().items()
        )
        return f"M0{self.profile} {body or '1'}"


def _is_canonical_row(row: Sequence[int]) -> bool:
    ell = sum(1 for k in row if k > 0)
    head = row[:ell]
    return all(k > 0 for k in head) and all(a <= b for a, b in zip(head, head[1:]))


def normalize_exponents(profile: ColorProfile, ks: Sequence[int]) -> list[int]:
    """Permute exponents within each color into canonical order."""
    out = list(ks)
    for j in range(profile.m):
        rng = profile.color_range(j)
        pos = sorted(k for k in (ks[i - 1] for i in rng) if k > 0)
        row = pos + [0] * (len(rng) - len(pos))
        for i, k in zip(rng, row):
            out[i - 1] = k
    return out


def parse_points(text: str) -> dict[int, int]:
    """Parse ``"1:2,6:2,7:3"``; a bare ``"5"`` means exponent 1."""
    points: dict[int, int] = {}
    text = text.strip()
    if not text:
        return points
    for item in text.split(","):
        item = item.strip()
        try:
            if ":" in item:
                a, b = item.split(":", 1)
                i, k = int(a), int(b)
            else:
                i, k = int(item), 1
        except ValueError:
            raise InputError(f"bad exponent entry {item!r}; expected point:exponent") from None
        if k < 0:
            raise InputError(f"negative exponent in {item!r}")
        points[i] = points.get(i, 0) + k
    return points


def parse_sizes(text: str) -> ColorProfile:
    try:
        sizes = tuple(int(x) for x in text.replace(" ", "").strip("[]").split(","))
    except ValueError:
        raise InputError(f"bad profile {text!r}; expected e.g. 5,4,1") from None
    return ColorProfile(sizes)


def compositions(n: int, min_parts: int = 3) -> Iterator[tuple[int, ...]]:
    """All compositions of ``n`` with at least ``min_parts`` parts."""

    def rec(rest, acc):
        if rest == 0:
            if len(acc) >= min_parts:
                yield tuple(acc)
            return
        for first in range(1, rest + 1):
            acc.append(first)
            yield from rec(rest - first, acc)
            acc.pop()

    yield from rec(n, [])


def _weak_partitions(total: int, max_len: int, max_part: int | None = None):
    """Weakly decreasing positive sequences summing to ``total``."""
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    top = total if max_part is None else min(total, max_part)
    for first in range(top, 0, -1):
        for rest in _weak_partitions(total - first, max_len - 1, first):
            yield (first,) + rest


def canonical_exponents(profile: ColorProfile) -> Iterator[ExponentProfile]:
    """Every canonical exponent vector on ``profile``."""
    m = profile.m

    def rec(j, remaining, acc):
        if j == m:
            if remaining == 0:
                yield ExponentProfile(profile, tuple(acc))
            return
        r = profile.sizes[j]
        for total in range(remaining + 1):
            for part in _weak_partitions(total, r):
                row = list(reversed(part)) + [0] * (r - len(part))
                yield from rec(j + 1, remaining - total, acc + row)

    yield from rec(0, profile.n - 3, [])


def all_exponent_profiles(max_n: int, min_n: int = 3) -> Iterator[ExponentProfile]:
    for n in range(min_n, max_n + 1):
        for sizes in compositions(n):
            yield from canonical_exponents(ColorProfile(sizes))
