"""Gamma-stable dual trees, alternating strata sums and their two involutions.

A dual tree is stored by its spine, the path of internal vertices from the
vertex carrying ``P`` to the one carrying ``Q``. Each spine vertex holds a
tuple of branches; a branch is either a leaf label (``int``) or a tuple of
branches (an internal vertex hanging off the spine, listed with its
children). Branches are sorted by their smallest leaf, which makes the
encoding canonical up to relabelling of internal vertices.

Millipedes are ordered set partitions of the non-dominating leaves into
independent sets; a millipede with ``r`` blocks has ``r - 1`` internal edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Union

from srikit.errors import InputError
from srikit.graph_core import (
    Orientation,
    SimpleGraph,
    delete_vertices,
    dominating_vertices,
    is_independent,
)
from srikit.osp import OrderedSetPartition, enumerate_osps, set_partitions

Branch = Union[int, tuple]
INF = math.inf


def _leaves(branch: Branch) -> list[int]:
    if isinstance(branch, int):
        return [branch]
    return [x for b in branch for x in _leaves(b)]


def _min_leaf(branch: Branch) -> int:
    return branch if isinstance(branch, int) else min(_min_leaf(b) for b in branch)


def _canon(branches: Iterable[Branch]) -> tuple:
    return tuple(sorted(branches, key=_min_leaf))


def _count_nodes(branch: Branch) -> int:
    if isinstance(branch, int):
        return 0
    return 1 + sum(_count_nodes(b) for b in branch)


@dataclass(frozen=True)
class DualTree:
    p: int
    q: int
    spine: tuple[tuple[Branch, ...], ...]

    def __post_init__(self):
        if not self.spine:
            raise InputError("a dual tree needs at least one spine vertex")
        object.__setattr__(self, "spine", tuple(_canon(v) for v in self.spine))

    @cached_property
    def internal_edge_count(self) -> int:
        """``i(T)``: spine edges plus one edge per hanging internal vertex."""
        return len(self.spine) - 1 + sum(_count_nodes(b) for v in self.spine for b in v)

    @property
    def sign(self) -> int:
        return -1 if self.internal_edge_count % 2 else 1

    def branch_leaves(self, i: int) -> list[int]:
        """``L_i``: leaves hanging off spine vertex ``i`` (``P`` and ``Q`` excluded)."""
        return [x for b in self.spine[i] for x in _leaves(b)]

    def leaves(self) -> list[int]:
        return [self.p] + [x for i in range(len(self.spine)) for x in self.branch_leaves(i)] + [self.q]

    def is_millipede(self) -> bool:
        return all(isinstance(b, int) for v in self.spine for b in v)

    def to_graph(self):
        """Explicit form: ``(internal_vertices, internal_edges, leaf_attachment)``.

        Spine vertices are numbered ``0..r-1`` from ``P``; hanging vertices
        follow in depth-first order.
        """
        edges: list[tuple[int, int]] = []
        attach: dict[int, int] = {self.p: 0, self.q: len(self.spine) - 1}
        counter = [len(self.spine)]

        def walk(branches, at):
            for b in branches:
                if isinstance(b, int):
                    attach[b] = at
                else:
                    node = counter[0]
                    counter[0] += 1
                    edges.append((at, node))
                    walk(b, node)

        for i, v in enumerate(self.spine):
            if i:
                edges.append((i - 1, i))
            walk(v, i)
        return tuple(range(counter[0])), tuple(edges), attach

    def is_stable(self, gamma: SimpleGraph) -> bool:
        """Degree and Gamma-stability check on every internal vertex and edge.

        A spine vertex always meets two of {previous spine vertex, P} and
        {next spine vertex, Q}, so it needs one branch; a hanging vertex needs
        two children and a Gamma-edge among its leaves. Spine edges are
        always fine because P and Q dominate.
        """
        if sorted(self.leaves()) != list(range(gamma.vertex_count)):
            return False

        def ok(branch):
            if isinstance(branch, int):
                return True
            if len(branch) < 2 or is_independent(gamma, _leaves(branch)):
                return False
            return all(ok(b) for b in branch)

        return all(len(v) >= 1 and all(ok(b) for b in v) for v in self.spine)

    def __str__(self):
        return format_tree(self)


def _fmt_branch(b: Branch, offset: int) -> str:
    if isinstance(b, int):
        return str(b + offset)
    return "(" + " ".join(_fmt_branch(x, offset) for x in b) + ")"


def format_tree(t: DualTree, one_indexed: bool = True) -> str:
    """``P [..] [..] Q`` with nested parentheses for hanging vertices."""
    off = 1 if one_indexed else 0
    body = " ".join("[" + " ".join(_fmt_branch(b, off) for b in v) + "]" for v in t.spine)
    return f"{t.p + off}: {body} :{t.q + off}"


def _check_pq(gamma: SimpleGraph, p: int, q: int):
    if p == q:
        raise InputError("P and Q must be distinct")
    dom = dominating_vertices(gamma)
    for v, name in ((p, "P"), (q, "Q")):
        if not 0 <= v < gamma.vertex_count:
            raise InputError(f"{name}={v} out of range")
        if v not in dom:
            raise InputError(f"{name}={v} is not a dominating vertex")


def _forests(gamma: SimpleGraph, leaves: tuple[int, ...], cache: dict, min_parts: int = 1) -> list[tuple]:
    """All ways to hang ``leaves`` off one vertex as canonical branch tuples."""
    key = (leaves, min_parts)
    if key in cache:
        return cache[key]
    out = []
    for part in set_partitions(leaves):
        if len(part) < min_parts:
            continue
        options = [[b[0]] if len(b) == 1 else _subtrees(gamma, b, cache) for b in part]
        for choice in product(*options):
            out.append(_canon(choice))
    cache[key] = out
    return out


def _subtrees(gamma, block, cache):
    # a hanging vertex: at least two children and a Gamma-edge below it
    if is_independent(gamma, block):
        return []
    return _forests(gamma, block, cache, min_parts=2)


def enumerate_stable_trees(gamma: SimpleGraph, p: int, q: int) -> Iterator[DualTree]:
    """Every Gamma-stable dual tree on leaf set ``V(gamma)``, once each."""
    _check_pq(gamma, p, q)
    others = [v for v in gamma.vertices if v not in (p, q)]
    cache: dict = {}
    for osp in enumerate_osps(others):
        per_vertex = [_forests(gamma, block, cache) for block in osp.blocks]
        for spine in product(*per_vertex):
            yield DualTree(p, q, spine)


def alternating_strata_sum(gamma: SimpleGraph, p: int, q: int) -> int:
    """``sum_T (-1)^{i(T)}`` over Gamma-stable trees."""
    return sum(t.sign for t in enumerate_stable_trees(gamma, p, q))


def up_down_involution(t: DualTree, gamma: SimpleGraph, check: bool = True) -> DualTree:
    """Contract or expand at the first spine vertex whose ``L_i`` holds a Gamma-edge."""
    if check and not t.is_stable(gamma):
        raise InputError("input tree is not Gamma-stable")
    for i, v in enumerate(t.spine):
        if is_independent(gamma, t.branch_leaves(i)):
            continue
        if len(v) == 1:
            new_v = v[0]  # contraction; v[0] is a hanging vertex since L_i has an edge
        else:
            new_v = (tuple(v),)  # expansion
        return DualTree(t.p, t.q, t.spine[:i] + (new_v,) + t.spine[i + 1 :])
    return t


# -- millipedes ---------------------------------------------------------------

Millipede = OrderedSetPartition


def millipede_to_tree(m: Millipede, p: int, q: int) -> DualTree:
    return DualTree(p, q, tuple(tuple(b) for b in m.blocks))


def tree_to_millipede(t: DualTree) -> Millipede | None:
    if not t.is_millipede():
        return None
    return OrderedSetPartition(tuple(tuple(v) for v in t.spine))


def enumerate_millipedes(graph: SimpleGraph, leaves: Iterable[int] | None = None):
    leaves = graph.vertices if leaves is None else leaves
    return enumerate_osps(leaves, lambda b: is_independent(graph, b))


def _block_masks(m: Millipede) -> list[int]:
    out = []
    for b in m.blocks:
        mask = 0
        for x in b:
            mask |= 1 << x
        out.append(mask)
    return out


def _m_value(blocks, masks, nbr, idx, c):
    """``m_c`` for leaf ``c`` sitting in block ``idx``."""
    best = INF
    j = idx - 1
    while j >= 0 and not (nbr[c] & masks[j]):
        lo = blocks[j][0]
        if lo < best:
            best = lo
        j -= 1
    return best


def disconnected_region(m: Millipede, graph: SimpleGraph, c: int) -> tuple[frozenset[int], float]:
    """``(DR_c, m_c)``: leaves of the maximal run of blocks just left of ``c``
    that contain no neighbour of ``c``; ``m_c`` is their minimum or ``inf``."""
    idx = next((i for i, b in enumerate(m.blocks) if c in b), None)
    if idx is None:
        raise InputError(f"leaf {c} does not occur in the millipede")
    masks = _block_masks(m)
    nbr = graph.masks
    region: set[int] = set()
    j = idx - 1
    while j >= 0 and not (nbr[c] & masks[j]):
        region.update(m.blocks[j])
        j -= 1
    return frozenset(region), (min(region) if region else INF)


def left_right_involution(m: Millipede, graph: SimpleGraph) -> Millipede:
    """Merge into, or split off from, the leftmost bad vertex."""
    blocks = m.blocks
    masks = _block_masks(m)
    nbr = graph.masks
    for idx, b in enumerate(blocks):
        mc = [_m_value(blocks, masks, nbr, idx, c) for c in b]
        if len(b) == 1 and not mc[0] < b[0]:
            continue
        if all(v < c for v, c in zip(mc, b)):
            prev = blocks[idx - 1]
            if len(prev) != 1:
                raise InputError("merge case without a singleton to the left")
            merged = tuple(sorted(prev + b))
            return OrderedSetPartition(blocks[: idx - 1] + (merged,) + blocks[idx + 1 :])
        c = next(c for v, c in zip(mc, b) if v > c)
        rest = tuple(x for x in b if x != c)
        return OrderedSetPartition(blocks[:idx] + ((c,), rest) + blocks[idx + 1 :])
    return m


def is_left_right_fixed(m: Millipede, graph: SimpleGraph) -> bool:
    blocks = m.blocks
    if any(len(b) != 1 for b in blocks):
        return False
    masks = _block_masks(m)
    return all(_m_value(blocks, masks, graph.masks, i, b[0]) > b[0] for i, b in enumerate(blocks))


def left_right_fixed_points(graph: SimpleGraph, leaves: Iterable[int] | None = None) -> Iterator[Millipede]:
    """All-singleton millipedes with ``m_c > c`` for every leaf ``c``."""
    leaves = sorted(graph.vertices if leaves is None else leaves)
    nbr = graph.masks
    order: list[int] = []

    def rec(remaining):
        if not remaining:
            yield OrderedSetPartition(tuple((x,) for x in order))
            return
        for c in sorted(remaining, reverse=True):
            best = INF
            for x in reversed(order):
                if nbr[c] >> x & 1:
                    break
                best = min(best, x)
            if best > c:
                order.append(c)
                yield from rec(remaining - {c})
                order.pop()

    yield from rec(frozenset(leaves))


def aco_to_caterpillar(o: Orientation) -> Millipede:
    """List the largest source, delete it, repeat."""
    if not o.is_acyclic():
        raise InputError("orientation has a directed cycle")
    n = o.base.vertex_count
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for t, h in o.direction.values():
        indeg[h] += 1
        out[t].append(h)
    remaining = set(range(n))
    order = []
    while remaining:
        src = max(v for v in remaining if indeg[v] == 0)
        order.append(src)
        remaining.discard(src)
        for w in out[src]:
            indeg[w] -= 1
    return OrderedSetPartition(tuple((v,) for v in order))


def caterpillar_to_aco(m: Millipede, graph: SimpleGraph) -> Orientation:
    """Orient each edge from the leaf placed further left to the one further right."""
    if sorted(m.ground) != list(graph.vertices) or not is_left_right_fixed(m, graph):
        raise InputError("millipede is not a left-right fixed point on this graph")
    pos = {b[0]: i for i, b in enumerate(m.blocks)}
    return Orientation.from_arcs(
        graph, [(u, v) if pos[u] < pos[v] else (v, u) for u, v in graph.edges]
    )


def strata_report(gamma: SimpleGraph, p: int, q: int) -> dict:
    """Signed strata sum next to ``|ACO(gamma - {P, Q})|``."""
    from srikit.graph_core import count_acyclic_orientations

    total = alternating_strata_sum(gamma, p, q)
    rest, _ = delete_vertices(gamma, [p, q])
    aco = count_acyclic_orientations(rest)
    n = rest.vertex_count
    return {
        "sum": total,
        "aco": aco,
        "n": n,
        "expected_sign": (-1) ** (n - 1),
        "sign_ok": total == (-1) ** (n - 1) * aco,
    }
