"""Exhaustive property sweeps behind ``srikit verify`` and the acceptance suite."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Iterator

from srikit.decorations import (
    enumerate_decorations,
    count_fixed_points,
    hue_step,
    is_mismatched,
    underline_involution,
    validate,
)
from srikit.errors import InputError
from srikit.graph_core import (
    SimpleGraph,
    all_graphs,
    count_acyclic_orientations,
    enumerate_acyclic_orientations,
    isomorphism_classes,
)
from srikit.nonvanishing import count_matchings, count_mismatched_colorings, nonzero_predicate
from srikit.osp import enumerate_osps, merge_split_involution, osp_sign
from srikit.profiles import ExponentProfile, all_exponent_profiles
from srikit.psi_engine import multinomial_oracle
from srikit.strata import (
    alternating_strata_sum,
    aco_to_caterpillar,
    caterpillar_to_aco,
    enumerate_millipedes,
    enumerate_stable_trees,
    is_left_right_fixed,
    left_right_fixed_points,
    left_right_involution,
    up_down_involution,
)

# -- decorations ---------------------------------------------------------------


@dataclass
class ProfileCheck:
    profile: str
    n: int
    decorations: int = 0
    signed_all: int = 0
    underline_violations: int = 0
    mismatched: int = 0
    signed_mismatched: int = 0
    hue_violations: int = 0
    situation_violations: int = 0
    fixed_by_involution: int = 0
    fixed_points: int = 0
    oracle: int = 0
    nonzero: bool = False
    colorings: int = 0
    matchings: int = 0
    single_psi_per_color: bool = False
    messages: list = field(default_factory=list)

    @property
    def involutions_ok(self) -> bool:
        return not (self.underline_violations or self.hue_violations or self.situation_violations)

    @property
    def values_ok(self) -> bool:
        return (
            self.signed_all == self.signed_mismatched == self.fixed_by_involution
            == self.fixed_points == self.oracle
        )

    @property
    def nonzero_ok(self) -> bool:
        return self.nonzero == (self.oracle > 0)

    @property
    def bounds_ok(self) -> bool:
        if not self.colorings <= self.oracle <= self.matchings:
            return False
        return not self.single_psi_per_color or self.colorings == self.oracle == self.matchings

    @property
    def ok(self) -> bool:
        return self.involutions_ok and self.values_ok and self.nonzero_ok and self.bounds_ok

    def as_dict(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def _note(rec: ProfileCheck, msg: str, limit: int = 5):
    if len(rec.messages) < limit:
        rec.messages.append(msg)


def _check_hue(rec: ProfileCheck, d, validate_outputs: bool):
    step = hue_step(d)
    if step.case == "fixed":
        rec.fixed_by_involution += 1
        if any(len(b) > 1 for b in d.blocks) or d.underlined:
            rec.hue_violations += 1
            _note(rec, f"fixed point with a non-singleton hue or underline:\n{d}")
        return
    out = step.result
    if validate_outputs:
        try:
            validate(out)
        except InputError as exc:
            rec.hue_violations += 1
            _note(rec, f"hue involution produced an invalid decoration ({exc}) from\n{d}")
            return
    back = hue_step(out)
    if out.sign == d.sign or not is_mismatched(out) or back.result != d:
        rec.hue_violations += 1
        _note(rec, f"hue involution is not a sign-reversing involution at\n{d}")
    elif {step.case, back.case} != {"split", "merge"} or step.situation != back.situation:
        rec.situation_violations += 1
        _note(rec, f"split/merge or Situation tag not preserved at\n{d}")


def check_profile(e: ExponentProfile, validate_outputs: bool = True) -> ProfileCheck:
    """Run both involutions over every decoration of ``e`` and compare all counts."""
    rec = ProfileCheck(str(e), e.n)
    for d in enumerate_decorations(e):
        rec.decorations += 1
        rec.signed_all += d.sign
        u = underline_involution(d)
        if u is d:
            if not is_mismatched(d):
                rec.underline_violations += 1
                _note(rec, f"underline involution fixes a matched decoration\n{d}")
                continue
            rec.mismatched += 1
            rec.signed_mismatched += d.sign
            _check_hue(rec, d, validate_outputs)
            continue
        if validate_outputs:
            try:
                validate(u)
            except InputError as exc:
                rec.underline_violations += 1
                _note(rec, f"underline involution produced an invalid decoration ({exc})")
                continue
        if u.sign == d.sign or underline_involution(u) != d:
            rec.underline_violations += 1
            _note(rec, f"underline involution is not a sign-reversing involution at\n{d}")
    rec.fixed_points = count_fixed_points(e)
    rec.oracle = multinomial_oracle(e)
    rec.nonzero = nonzero_predicate(e).nonzero
    rec.colorings = count_mismatched_colorings(e)
    rec.matchings = count_matchings(e)
    rec.single_psi_per_color = all(e.ell(j) <= 1 for j in range(e.profile.m))
    return rec


def sweep_profiles(max_n: int, min_n: int = 3, validate_outputs: bool = True) -> Iterator[ProfileCheck]:
    for e in all_exponent_profiles(max_n, min_n):
        yield check_profile(e, validate_outputs)


# -- ordered set partitions ----------------------------------------------------------


@dataclass
class OspCheck:
    n: int
    osps: int = 0
    violations: int = 0
    signed_sum: int = 0
    fixed: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations and self.signed_sum == 1 and self.fixed == 1


def check_merge_split(n: int) -> OspCheck:
    rec = OspCheck(n)
    for p in enumerate_osps(range(1, n + 1)):
        rec.osps += 1
        rec.signed_sum += osp_sign(p)
        q = merge_split_involution(p)
        if q == p:
            rec.fixed += 1
            if [b for b in p.blocks] != [(x,) for x in range(n, 0, -1)]:
                rec.violations += 1
        elif osp_sign(q) == osp_sign(p) or merge_split_involution(q) != p:
            rec.violations += 1
    return rec


def check_independent_osp_identity(g: SimpleGraph) -> bool:
    """Signed count of OSPs into independent sets equals the ACO count."""
    total = sum(osp_sign(p) for p in enumerate_millipedes(g))
    return total == count_acyclic_orientations(g)


# -- strata ----------------------------------------------------------------------


def with_poles(g: SimpleGraph) -> tuple[SimpleGraph, int, int]:
    """Add two dominating vertices ``P = n`` and ``Q = n + 1``."""
    n = g.vertex_count
    edges = set(g.edges) | {(v, a) for a in (n, n + 1) for v in range(a)}
    return SimpleGraph(n + 2, frozenset(edges)), n, n + 1


@dataclass
class GraphCheck:
    edges: tuple
    n: int
    trees: int = 0
    strata_sum: int = 0
    aco: int = 0
    up_down_violations: int = 0
    millipedes: int = 0
    left_right_violations: int = 0
    left_right_fixed: int = 0
    bijection_violations: int = 0

    @property
    def sign_ok(self) -> bool:
        return self.strata_sum == (-1) ** (self.n - 1) * self.aco

    @property
    def abs_ok(self) -> bool:
        return abs(self.strata_sum) == self.aco

    @property
    def involutions_ok(self) -> bool:
        return not (self.up_down_violations or self.left_right_violations)

    @property
    def ok(self) -> bool:
        return (
            self.sign_ok
            and self.involutions_ok
            and self.left_right_fixed == self.aco
            and not self.bijection_violations
        )

    def as_dict(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def check_graph(g: SimpleGraph, trees: bool = True, left_right: bool = True) -> GraphCheck:
    """Strata sum, up-down, left-right and the ACO bijection on ``g`` plus two poles."""
    rec = GraphCheck(tuple(g.sorted_edges()), g.vertex_count)
    rec.aco = count_acyclic_orientations(g)
    gamma, p, q = with_poles(g)
    if trees:
        for t in enumerate_stable_trees(gamma, p, q):
            rec.trees += 1
            rec.strata_sum += t.sign
            u = up_down_involution(t, gamma, check=False)
            if u == t:
                if not t.is_millipede():
                    rec.up_down_violations += 1
            elif (
                u.sign == t.sign
                or not u.is_stable(gamma)
                or up_down_involution(u, gamma, check=False) != t
            ):
                rec.up_down_violations += 1
    if left_right:
        for m in enumerate_millipedes(g):
            rec.millipedes += 1
            m2 = left_right_involution(m, g)
            fixed = m2 == m
            if fixed != is_left_right_fixed(m, g):
                rec.left_right_violations += 1
            elif not fixed and (
                len(m2) % 2 == len(m) % 2 or left_right_involution(m2, g) != m
            ):
                rec.left_right_violations += 1
        fixed_points = list(left_right_fixed_points(g))
        rec.left_right_fixed = len(fixed_points)
        for m in fixed_points:
            if aco_to_caterpillar(caterpillar_to_aco(m, g)) != m:
                rec.bijection_violations += 1
        for o in enumerate_acyclic_orientations(g):
            if caterpillar_to_aco(aco_to_caterpillar(o), g) != o:
                rec.bijection_violations += 1
    return rec


def relabel(g: SimpleGraph, perm) -> SimpleGraph:
    return SimpleGraph(g.vertex_count, frozenset((perm[u], perm[v]) for u, v in g.edges))


def graph_suite(
    max_labelled: int = 5, max_classes: int = 6, relabelings: int = 3, seed: int = 0
) -> Iterator[tuple[SimpleGraph, bool]]:
    """``(graph, is_representative)`` pairs, at least one vertex each.

    Every labelled graph up to ``max_labelled`` vertices; for larger orders one
    representative per isomorphism class plus seeded random relabellings. Tree
    sums and the up-down involution commute with relabelling, so copies flagged
    ``False`` only need the label-sensitive checks.
    """
    rng = random.Random(seed)
    for n in range(1, max_labelled + 1):
        for g in all_graphs(n):
            yield g, True
    for n in range(max_labelled + 1, max_classes + 1):
        for g in isomorphism_classes(n):
            yield g, True
            for _ in range(relabelings):
                perm = list(range(n))
                rng.shuffle(perm)
                yield relabel(g, perm), False


def strata_sum_only(g: SimpleGraph) -> int:
    gamma, p, q = with_poles(g)
    return alternating_strata_sum(gamma, p, q)


__all__ = [
    "GraphCheck",
    "OspCheck",
    "ProfileCheck",
    "check_graph",
    "check_independent_osp_identity",
    "check_merge_split",
    "check_profile",
    "graph_suite",
    "relabel",
    "strata_sum_only",
    "sweep_profiles",
    "with_poles",
]
