"""Positivity criterion, Hall matchings, and the coloring/matching bounds."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb, prod

from srikit.errors import ConsistencyError, InputError
from srikit.profiles import ExponentProfile, color_letter

RYSER_MAX_COLUMNS = 20


@dataclass(frozen=True)
class Slot:
    label: int  # boxed number (hue variant) or 0-based color (color variant)
    color: int
    multiplicity: int


@dataclass(frozen=True)
class AssignmentGraph:
    """Non-crossed numbers on the left, hue or color slots on the right.

    A boxed number may take any slot; an unboxed number only slots of
    another color.
    """

    left: tuple[int, ...]
    slots: tuple[Slot, ...]
    edges: frozenset[tuple[int, int]]  # (number, slot index)
    variant: str = "hue"

    def neighbors(self, x: int) -> list[int]:
        return [s for s in range(len(self.slots)) if (x, s) in self.edges]

    @property
    def right_size(self) -> int:
        return sum(s.multiplicity for s in self.slots)


def assignment_graph(e: ExponentProfile, variant: str = "hue") -> AssignmentGraph:
    prof = e.profile
    col = prof.color_of
    if variant == "hue":
        slots = tuple(Slot(i, col[i], e.k(i)) for i in sorted(e.boxed))
    elif variant == "color":
        slots = tuple(
            Slot(j, j, e.color_total(j)) for j in range(prof.m) if e.color_total(j) > 0
        )
    else:
        raise InputError(f"unknown variant {variant!r}; use 'hue' or 'color'")
    left = tuple(i for i in range(1, prof.n + 1) if i not in prof.crossed_out)
    edges = frozenset(
        (x, s)
        for x in left
        for s, slot in enumerate(slots)
        if e.k(x) > 0 or col[x] != slot.color
    )
    return AssignmentGraph(left, slots, edges, variant)


# -- positivity ----------------------------------------------------------------


@dataclass(frozen=True)
class ColorBound:
    color: int
    k_total: int
    ell: int
    size: int
    bound: int  # ell + n - 3 - r

    @property
    def applies(self) -> bool:
        return self.k_total != 0

    @property
    def ok(self) -> bool:
        return not self.applies or self.k_total <= self.bound

    def as_dict(self) -> dict:
        return {
            "color": color_letter(self.color),
            "k": self.k_total,
            "ell": self.ell,
            "r": self.size,
            "bound": self.bound,
            "applies": self.applies,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class NonzeroReport:
    rows: tuple[ColorBound, ...]

    @property
    def nonzero(self) -> bool:
        return all(row.ok for row in self.rows)

    def __bool__(self):
        return self.nonzero


def nonzero_predicate(e: ExponentProfile) -> NonzeroReport:
    """Per-color inequalities ``k_C <= ell_j + n - 3 - r_j`` (only where ``k_C > 0``)."""
    prof = e.profile
    rows = tuple(
        ColorBound(j, e.color_total(j), e.ell(j), prof.sizes[j], e.ell(j) + prof.n - 3 - prof.sizes[j])
        for j in range(prof.m)
    )
    return NonzeroReport(rows)


# -- counting --------------------------------------------------------------------


def count_mismatched_colorings(e: ExponentProfile) -> int:
    """Color assignments to non-crossed numbers, color ``C`` used ``k_C`` times,
    no unboxed number receiving its own color."""
    g = assignment_graph(e, "color")
    return _count_dp(g)


def _count_dp(g: AssignmentGraph) -> int:
    """Assignments of left vertices to slots, slot ``s`` used exactly its
    multiplicity; slots with equal labels are indistinguishable."""
    allowed = [tuple(g.neighbors(x)) for x in g.left]

    @lru_cache(maxsize=None)
    def rec(pos, remaining):
        if pos == len(allowed):
            return 1 if not any(remaining) else 0
        total = 0
        for s in allowed[pos]:
            if remaining[s]:
                total += rec(pos + 1, remaining[:s] + (remaining[s] - 1,) + remaining[s + 1 :])
        return total

    if len(g.left) != g.right_size:
        return 0
    return rec(0, tuple(s.multiplicity for s in g.slots))


def _ryser(g: AssignmentGraph) -> int:
    """Permanent of the biadjacency matrix with slot ``s`` repeated
    ``multiplicity`` times, divided by the product of multiplicity factorials.

    Inclusion-exclusion over how many copies of each slot are used; rows with
    the same neighbourhood are grouped.
    """
    n_cols = g.right_size
    if n_cols != len(g.left):
        return 0
    if n_cols > RYSER_MAX_COLUMNS:
        raise InputError(f"{n_cols} columns exceeds the exact permanent limit {RYSER_MAX_COLUMNS}")
    row_classes: dict[tuple[int, ...], int] = {}
    for x in g.left:
        key = tuple(g.neighbors(x))
        row_classes[key] = row_classes.get(key, 0) + 1
    mults = [s.multiplicity for s in g.slots]
    total = 0
    for used in product(*(range(k + 1) for k in mults)):
        weight = prod(comb(k, u) for k, u in zip(mults, used))
        term = weight
        for cols, count in row_classes.items():
            term *= sum(used[c] for c in cols) ** count
            if not term:
                break
        total += -term if (n_cols - sum(used)) % 2 else term
    denom = prod(_fact(k) for k in mults)
    if total % denom:
        raise ConsistencyError("permanent not divisible by multiplicity factorials")
    return total // denom


@lru_cache(maxsize=None)
def _fact(k: int) -> int:
    return 1 if k < 2 else k * _fact(k - 1)


def count_matchings(e: ExponentProfile, method: str = "ryser") -> int:
    """Mismatched singleton-hue assignments (the matching upper bound)."""
    g = assignment_graph(e, "hue")
    if method == "ryser":
        return _ryser(g)
    if method == "dp":
        return _count_dp(g)
    if method == "both":
        a, b = _ryser(g), _count_dp(g)
        if a != b:
            raise ConsistencyError(f"Ryser {a} != DP {b}")
        return a
    raise InputError(f"unknown method {method!r}")


# -- Hall ------------------------------------------------------------------------


def _max_matching(g: AssignmentGraph) -> int:
    copies = [s for s, slot in enumerate(g.slots) for _ in range(slot.multiplicity)]
    by_slot: dict[int, list[int]] = {}
    for c, s in enumerate(copies):
        by_slot.setdefault(s, []).append(c)
    adj = [[c for s in g.neighbors(x) for c in by_slot.get(s, [])] for x in g.left]
    owner = [-1] * len(copies)

    def augment(u, seen):
        for c in adj[u]:
            if c in seen:
                continue
            seen.add(c)
            if owner[c] < 0 or augment(owner[c], seen):
                owner[c] = u
                return True
        return False

    return sum(1 for u in range(len(g.left)) if augment(u, set()))


def _hall_by_classes(g: AssignmentGraph) -> bool:
    """Hall's condition on the slot side, over unions of neighbourhood classes."""
    classes: dict[frozenset[int], int] = {}
    for s, slot in enumerate(g.slots):
        nbh = frozenset(x for x in g.left if (x, s) in g.edges)
        classes[nbh] = classes.get(nbh, 0) + slot.multiplicity
    items = list(classes.items())
    for size in range(1, len(items) + 1):
        for group in combinations(items, size):
            nbh = frozenset().union(*(a for a, _ in group))
            if len(nbh) < sum(k for _, k in group):
                return False
    return True


def hall_check(g: AssignmentGraph) -> bool:
    """Whether a perfect matching exists; augmenting paths and Hall's
    inequalities must agree."""
    if len(g.left) != g.right_size:
        raise InputError(f"left side has {len(g.left)} vertices but right side {g.right_size}")
    by_paths = _max_matching(g) == len(g.left)
    by_hall = _hall_by_classes(g)
    if by_paths != by_hall:
        raise ConsistencyError("augmenting-path matching disagrees with Hall's condition")
    return by_paths


def bounds(e: ExponentProfile, method: str = "both") -> tuple[int, int, int]:
    """``(mismatched colorings, intersection number, matchings)``."""
    from srikit.psi_engine import intersection_number

    return count_mismatched_colorings(e), intersection_number(e, method), count_matchings(e)
