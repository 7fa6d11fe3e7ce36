"""Decorations of a psi product, the underline and hue involutions, and fixed points.

Numbers are ``1..n``. A hue is identified with its block, an ascending tuple
of boxed numbers of one color; its color is the color of the block's first
element. ``Decoration.hues[i]`` is the hue of ``i`` (``None`` for crossed-out
numbers and at index 0).
"""

from __future__ import annotations

import re
from itertools import combinations, product
from typing import Iterable, Iterator, NamedTuple

from srikit.errors import ConsistencyError, InputError
from srikit.osp import set_partitions
from srikit.profiles import COLOR_LETTERS, ColorProfile, ExponentProfile, color_letter

Hue = tuple  # ascending tuple of numbers


class Decoration(NamedTuple):
    exponents: ExponentProfile
    blocks: tuple  # hue partition, sorted by minimum
    hues: tuple  # length n + 1
    underlined: frozenset = frozenset()

    @property
    def profile(self) -> ColorProfile:
        return self.exponents.profile

    @property
    def sign(self) -> int:
        return -1 if len(self.underlined) % 2 else 1

    def hue_color(self, i: int) -> int:
        return self.profile.color_of[self.hues[i][0]]

    def numbers_with_hue(self, hue: Hue) -> list[int]:
        return [i for i, h in enumerate(self.hues) if h == hue]

    def __str__(self):
        return format_decoration(self)


def make_decoration(
    e: ExponentProfile, hues: dict[int, Iterable[int]], underlined: Iterable[int] = ()
) -> Decoration:
    """Build and validate a decoration from ``{number: hue block}``.

    The hue partition is read off as the set of hues in use.
    """
    n = e.n
    arr: list = [None] * (n + 1)
    for i, h in hues.items():
        if not 1 <= i <= n:
            raise InputError(f"number {i} out of range 1..{n}")
        arr[i] = tuple(sorted(h))
    blocks = tuple(sorted({h for h in arr if h is not None}))
    d = Decoration(e, blocks, tuple(arr), frozenset(underlined))
    validate(d)
    return d


def validate(d: Decoration) -> None:
    """Raise :class:`InputError` unless ``d`` satisfies every decoration axiom."""
    e, prof = d.exponents, d.profile
    n, col = prof.n, prof.color_of
    if len(d.hues) != n + 1 or d.hues[0] is not None:
        raise InputError("hues must have length n + 1 with an empty slot at index 0")
    covered = []
    for b in d.blocks:
        if list(b) != sorted(set(b)) or not b:
            raise InputError(f"hue block {b} must be a nonempty ascending tuple")
        if len({col[x] for x in b}) != 1:
            raise InputError(f"hue block {b} is not monochromatic")
        covered.extend(b)
    if sorted(covered) != sorted(e.boxed):
        raise InputError("hue partition must partition the boxed numbers")
    if list(d.blocks) != sorted(d.blocks):
        raise InputError("hue blocks must be sorted by minimum")
    blockset = set(d.blocks)
    for i in range(1, n + 1):
        h = d.hues[i]
        if i in prof.crossed_out:
            if h is not None:
                raise InputError(f"crossed-out number {i} must have no hue")
        elif h not in blockset:
            raise InputError(f"number {i} has hue {h}, which is not a block")
    forced = set()
    for b in d.blocks:
        if len(d.numbers_with_hue(b)) != e.k_of(b):
            raise InputError(f"hue {b} must occur exactly k_B = {e.k_of(b)} times")
        for x in b[1:]:
            forced.add(x)
            if d.hues[x] != b:
                raise InputError(f"{x} must carry hue {b}")
    if not forced <= d.underlined:
        raise InputError("non-minimal block elements must be underlined")
    for x in d.underlined - forced:
        if not 1 <= x <= n or x in prof.crossed_out or e.k(x) > 0:
            raise InputError(f"{x} cannot be underlined")
        if d.hue_color(x) != col[x]:
            raise InputError(f"underlined {x} must have a hue of its own color")


# -- enumeration ------------------------------------------------------------


def hue_partitions(e: ExponentProfile) -> Iterator[tuple[Hue, ...]]:
    """Monochromatic set partitions of the boxed numbers, blocks sorted by minimum."""
    prof = e.profile
    per_color = []
    for j in range(prof.m):
        boxed = [i for i in prof.color_range(j) if e.k(i) > 0]
        per_color.append(list(set_partitions(boxed)))
    for choice in product(*per_color):
        yield tuple(sorted(b for part in choice for b in part))


def _fillings(blocks, demand, slots, ok, base):
    """Hue tuples giving block ``i`` to exactly ``demand[i]`` of ``slots``.

    ``ok[i]`` is the set of slots block ``i`` may take. Blocks are placed one
    at a time by choosing a combination of the still-open slots.
    """
    hues = list(base)
    last = len(blocks) - 1

    def rec(i, open_slots):
        b = blocks[i]
        allowed = [x for x in open_slots if x in ok[i]]
        if i == last:
            if len(allowed) == len(open_slots) == demand[i]:
                for x in allowed:
                    hues[x] = b
                yield tuple(hues)
            return
        for pick in combinations(allowed, demand[i]):
            for x in pick:
                hues[x] = b
            taken = set(pick)
            yield from rec(i + 1, [x for x in open_slots if x not in taken])

    if not blocks:
        if not slots:
            yield tuple(hues)
        return
    yield from rec(0, list(slots))


def _decorations(e: ExponentProfile, mismatched: bool, partitions=None) -> Iterator[Decoration]:
    prof = e.profile
    n, col, crossed = prof.n, prof.color_of, prof.crossed_out
    kk = e.k_by_number
    for blocks in partitions if partitions is not None else hue_partitions(e):
        base: list = [None] * (n + 1)
        forced = set()
        for b in blocks:
            for x in b[1:]:
                base[x] = b
                forced.add(x)
        free = [i for i in range(1, n + 1) if i not in crossed and i not in forced]
        demand = [e.k_of(b) - len(b) + 1 for b in blocks]
        if mismatched:
            # unboxed numbers may not take a hue of their own color
            ok = [{x for x in free if kk[x] or col[x] != col[b[0]]} for b in blocks]
        else:
            ok = [set(free)] * len(blocks)
        forced_fs = frozenset(forced)
        unboxed = [x for x in free if not kk[x]]
        for hues in _fillings(blocks, demand, free, ok, base):
            if mismatched:
                yield Decoration(e, blocks, hues, forced_fs)
                continue
            optional = [x for x in unboxed if col[hues[x][0]] == col[x]]
            for size in range(len(optional) + 1):
                for extra in combinations(optional, size):
                    yield Decoration(e, blocks, hues, forced_fs.union(extra))


def enumerate_decorations(e: ExponentProfile) -> Iterator[Decoration]:
    """Every decoration: hue partition, then hue assignment, then optional underlines."""
    return _decorations(e, mismatched=False)


def enumerate_mismatched(e: ExponentProfile) -> Iterator[Decoration]:
    return _decorations(e, mismatched=True)


# -- underline involution ------------------------------------------------------


def decoration_sign(d: Decoration) -> int:
    return d.sign


def _matching_unboxed(d: Decoration) -> Iterator[int]:
    prof = d.exponents.profile
    col, kk, hues = prof.color_of, d.exponents.k_by_number, d.hues
    for i in range(1, prof.n + 1):
        h = hues[i]
        if h is not None and not kk[i] and col[h[0]] == col[i]:
            yield i


def underline_involution(d: Decoration) -> Decoration:
    """Toggle the underline on the smallest unboxed number whose hue matches its color."""
    x = next(_matching_unboxed(d), None)
    if x is None:
        return d
    return Decoration(d.exponents, d.blocks, d.hues, d.underlined ^ {x})


def is_mismatched(d: Decoration) -> bool:
    return next(_matching_unboxed(d), None) is None


# -- chains and permission -------------------------------------------------------


class ChainDecomposition:
    """Chains in order; ``order`` flattens them and ``position`` indexes it."""

    __slots__ = ("chains", "order", "position", "_hues")

    def __init__(self, chains, hues=()):
        self.chains = tuple(tuple(c) for c in chains)
        self.order = tuple(x for c in self.chains for x in c)
        self.position = {x: i for i, x in enumerate(self.order)}
        self._hues = hues

    @property
    def hue_chains(self) -> tuple[tuple[Hue, ...], ...]:
        return tuple(tuple(self._hues[x] for x in c) for c in self.chains)

    def predecessor(self, x: int) -> int | None:
        for c in self.chains:
            if x in c:
                k = c.index(x)
                return c[k - 1] if k else None
        raise InputError(f"{x} is not in the chain decomposition")

    def __eq__(self, other):
        return isinstance(other, ChainDecomposition) and self.chains == other.chains

    def __hash__(self):
        return hash(self.chains)

    def __repr__(self):
        return f"ChainDecomposition({self.chains})"


def number_chain(d: Decoration, color: int) -> ChainDecomposition:
    """Chain decomposition of the eligible boxed numbers of ``color`` (0-based)."""
    col, hues, under = d.exponents.profile.color_of, d.hues, d.underlined
    elig = [i for i in d.exponents.chain_pool[color] if i not in under and col[hues[i][0]] == color]
    in_i = set(elig)
    listed: set[int] = set()
    chains = []
    for start in elig:
        if start in listed:
            continue
        i = start
        chain = []
        while True:
            chain.append(i)
            listed.add(i)
            b = hues[i][0]
            if b in in_i and b not in listed:
                i = b
            else:
                break
        chains.append(tuple(chain))
    return ChainDecomposition(tuple(chains), hues)


def permission_list(
    d: Decoration, s: Iterable[int], color: int, chains: ChainDecomposition | None = None
) -> list[int]:
    """Members of ``s`` of ``color`` in chain order, then the rest ascending."""
    s = sorted(set(s))
    col = d.profile.color_of
    for x in s:
        h = d.hues[x]
        if h is None or col[h[0]] != color:
            raise InputError(f"{x} does not carry a hue of color {color_letter(color)}")
    chains = chains if chains is not None else number_chain(d, color)
    pos = chains.position
    own = [x for x in s if col[x] == color]
    missing = [x for x in own if x not in pos]
    if missing:
        raise InputError(f"{missing} are of this color but outside the chain decomposition")
    return sorted(own, key=pos.__getitem__) + [x for x in s if col[x] != color]


def wants_to_merge(d: Decoration, t: int, block: Hue) -> bool:
    block = tuple(block)
    if (t,) not in d.blocks or block not in d.blocks or block == (t,):
        return False
    col = d.profile.color_of
    r = block[0]
    return col[r] == col[t] and r > t and d.hues[r] == (t,)


class Permission(NamedTuple):
    granted: bool
    situation: str  # "Q" or "NQ"
    q: int | None
    r: int
    reason: str = ""


def has_permission(
    d: Decoration, t: int, block: Hue, chains: ChainDecomposition | None = None
) -> Permission:
    """Whether ``{t}`` has permission to merge with ``block``.

    Raises :class:`InputError` unless ``{t}`` wants to merge with ``block``.
    """
    block = tuple(block)
    if not wants_to_merge(d, t, block):
        raise InputError(f"{{{t}}} does not want to merge with {set(block)}")
    color = d.profile.color_of[t]
    return _permission(d, t, block, chains if chains is not None else number_chain(d, color))


def _permission(d: Decoration, t: int, block: Hue, chains: ChainDecomposition) -> Permission:
    hues = d.hues
    col = d.exponents.profile.color_of
    single = (t,)
    r = block[0]
    first = next((x for x in chains.order if hues[x] == single), None)
    pos = chains.position
    q = chains.predecessor(r) if r in pos else None
    situation = "Q" if q is not None else "NQ"
    if first != r:
        return Permission(False, situation, q, r, "condition (i)")
    # condition (ii): permission list of S, where S spans every color
    color, under = col[t], d.underlined
    own, other = [], []
    for x in range(1, len(hues)):
        h = hues[x]
        if (h == single or h == block) and x != q and x != r and x not in under:
            (own if col[x] == color else other).append(x)
    own.sort(key=pos.__getitem__)
    seen_single = False
    for x in own + other:
        if hues[x] == single:
            seen_single = True
        elif seen_single:
            return Permission(False, situation, q, r, "condition (ii)")
    return Permission(True, situation, q, r)


def merge_candidates(d: Decoration) -> list[tuple[int, Hue]]:
    """Pairs ``(t, B)`` with ``{t}`` wanting to merge with ``B``, by increasing ``t``."""
    col = d.exponents.profile.color_of
    hues = d.hues
    out = []
    for b in d.blocks:
        # every hue in use is a block, so a one-element hue is a singleton block
        h = hues[b[0]]
        if h is not None and len(h) == 1 and h[0] < b[0] and col[h[0]] == col[b[0]]:
            out.append((h[0], b))
    out.sort()
    return out


# -- hue involution --------------------------------------------------------------


class HueStep(NamedTuple):
    case: str  # "split", "merge" or "fixed"
    result: Decoration
    situation: str | None = None
    q: int | None = None
    t: int | None = None
    block: Hue | None = None


def hue_step(d: Decoration) -> HueStep:
    """Apply the hue involution and report which case fired."""
    col = d.exponents.profile.color_of
    # blocks are sorted by minimum
    big = next((b for b in d.blocks if len(b) > 1), None)
    m = big[0] if big else None
    cache: dict[int, ChainDecomposition] = {}

    def chains(c):
        if c not in cache:
            cache[c] = number_chain(d, c)
        return cache[c]

    for t, bt in merge_candidates(d):
        if m is not None and t > m:
            break
        perm = _permission(d, t, bt, chains(col[t]))
        if perm.granted:
            return HueStep("merge", _merge(d, t, bt), perm.situation, perm.q, t, bt)
    if big is None:
        return HueStep("fixed", d)
    result, q = _split(d, big, chains(col[m]))
    return HueStep("split", result, "Q" if q is not None else "NQ", q, None, big)


def _merge(d: Decoration, t: int, bt: Hue) -> Decoration:
    merged = tuple(sorted((t,) + bt))
    single = (t,)
    hues = tuple(merged if h == single or h == bt else h for h in d.hues)
    blocks = tuple(sorted([b for b in d.blocks if b != single and b != bt] + [merged]))
    return Decoration(d.exponents, blocks, hues, d.underlined | {bt[0]})


def _split(d: Decoration, big: Hue, chains: ChainDecomposition):
    e = d.exponents
    m, rest = big[0], big[1:]
    r = rest[0]
    order = chains.order
    q = None
    if any(c[0] < r and any(d.hues[x] == big for x in c) for c in chains.chains):
        q = next(x for x in order if d.hues[x] == big)
    hues = list(d.hues)
    underlined = set(d.underlined)
    hues[r] = (m,)  # step 1
    underlined.discard(r)
    for x in rest[1:]:
        hues[x] = rest
    if q is not None:
        hues[q] = rest
    s = [x for x in range(1, e.n + 1) if hues[x] == big]
    need = e.k_of(rest) - sum(1 for h in hues if h == rest)
    if need < 0 or len(s) - need != e.k(m) - 1:
        raise ConsistencyError(f"split of {big} cannot meet hue multiplicities")
    # step 4 orders S by the chains of the input decoration
    col, pos = e.profile.color_of, chains.position
    own = [x for x in s if col[x] == col[m]]
    if any(x not in pos for x in own):
        raise ConsistencyError(f"split of {big}: a same-color number is missing from the chains")
    own.sort(key=pos.__getitem__)
    single = (m,)
    for i, x in enumerate(own + [x for x in s if col[x] != col[m]]):
        hues[x] = rest if i < need else single
    blocks = tuple(sorted([b for b in d.blocks if b != big] + [(m,), rest]))
    return Decoration(e, blocks, tuple(hues), frozenset(underlined)), q


def hue_involution(d: Decoration) -> Decoration:
    """Split the non-singleton hue with smallest minimum, or merge the smallest
    singleton hue holding permission, whichever comes first; requires a
    mismatched input."""
    return hue_step(d).result


def is_fixed_point(d: Decoration) -> bool:
    return is_mismatched(d) and hue_step(d).case == "fixed"


def singleton_partition(e: ExponentProfile) -> tuple[Hue, ...]:
    return tuple((i,) for i in sorted(e.boxed))


def enumerate_fixed_points(e: ExponentProfile) -> Iterator[Decoration]:
    """Mismatched all-singleton decorations in which no hue has permission to merge."""
    for d in _decorations(e, mismatched=True, partitions=[singleton_partition(e)]):
        if not _has_any_permission(d):
            yield d


def _has_any_permission(d: Decoration) -> bool:
    col = d.profile.color_of
    cache: dict[int, ChainDecomposition] = {}
    for t, bt in merge_candidates(d):
        c = col[t]
        if c not in cache:
            cache[c] = number_chain(d, c)
        if _permission(d, t, bt, cache[c]).granted:
            return True
    return False


def count_fixed_points(e: ExponentProfile) -> int:
    return sum(1 for _ in enumerate_fixed_points(e))


# -- text form -------------------------------------------------------------------

_TOKEN = re.compile(r"^(\[)?(x)?(_)?(\d+)(\])?(?::([A-Z][0-9]*)\{([\d,]+)\})?$")
_HEADER = re.compile(r"^M0\[([\d,\s]+)\]\s+k=(\S*)$")


def _fmt_hue(prof: ColorProfile, h: Hue) -> str:
    return f"{color_letter(prof.color_of[h[0]])}{{{','.join(map(str, h))}}}"


def format_decoration(d: Decoration) -> str:
    """Rows by color; ``[..]`` boxed, ``x`` crossed out, ``_`` underlined, ``:C{B}`` hue."""
    e, prof = d.exponents, d.profile
    pts = ",".join(f"{i}:{k}" for i, k in e.points().items())
    lines = [f"M0{prof} k={pts}"]
    for j in range(prof.m):
        toks = []
        for i in prof.color_range(j):
            core = ("x" if i in prof.crossed_out else "") + ("_" if i in d.underlined else "") + str(i)
            if e.k(i) > 0:
                core = f"[{core}]"
            if d.hues[i] is not None:
                core += ":" + _fmt_hue(prof, d.hues[i])
            toks.append(core)
        lines.append(f"{color_letter(j)} | " + " ".join(toks))
    return "\n".join(lines) + "\n"


def parse_decoration(text: str) -> Decoration:
    """Inverse of :func:`format_decoration`; validates every marker."""
    from srikit.profiles import parse_points

    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise InputError("empty decoration text")
    hm = _HEADER.match(lines[0])
    if not hm:
        raise InputError(f"bad header {lines[0]!r}; expected 'M0[r1,...] k=i:k,...'")
    prof = ColorProfile(tuple(int(x) for x in hm.group(1).replace(" ", "").split(",")))
    e = ExponentProfile.from_points(prof, parse_points(hm.group(2)))
    rows = lines[1:]
    if len(rows) != prof.m:
        raise InputError(f"expected {prof.m} color rows, got {len(rows)}")
    hues: dict[int, tuple] = {}
    underlined = []
    seen = []
    for j, row in enumerate(rows):
        label, _, body = row.partition("|")
        if label.strip() != color_letter(j):
            raise InputError(f"row {j + 1} should be labelled {color_letter(j)}")
        for tok in body.split():
            tm = _TOKEN.match(tok)
            if not tm or bool(tm.group(1)) != bool(tm.group(5)):
                raise InputError(f"bad token {tok!r}")
            i = int(tm.group(4))
            if not 1 <= i <= prof.n or prof.color_of[i] != j:
                raise InputError(f"{i} does not belong to row {color_letter(j)}")
            seen.append(i)
            if bool(tm.group(1)) != (e.k(i) > 0):
                raise InputError(f"box marker on {i} disagrees with the exponents")
            if bool(tm.group(2)) != (i in prof.crossed_out):
                raise InputError(f"cross marker on {i} is wrong")
            if tm.group(3):
                underlined.append(i)
            if tm.group(6):
                block = tuple(int(x) for x in tm.group(7).split(","))
                if not all(1 <= x <= prof.n for x in block) or color_letter(prof.color_of[block[0]]) != tm.group(6):
                    raise InputError(f"hue letter in {tok!r} does not match its block")
                hues[i] = block
    if sorted(seen) != list(range(1, prof.n + 1)):
        raise InputError("every number 1..n must appear exactly once")
    return make_decoration(e, hues, underlined)


__all__ = [
    "COLOR_LETTERS",
    "ChainDecomposition",
    "Decoration",
    "HueStep",
    "Permission",
    "count_fixed_points",
    "decoration_sign",
    "enumerate_decorations",
    "enumerate_fixed_points",
    "enumerate_mismatched",
    "format_decoration",
    "has_permission",
    "hue_involution",
    "hue_partitions",
    "hue_step",
    "is_fixed_point",
    "is_mismatched",
    "make_decoration",
    "merge_candidates",
    "number_chain",
    "parse_decoration",
    "permission_list",
    "underline_involution",
    "validate",
    "wants_to_merge",
]
