"""Simple graphs and acyclic orientations.

Vertices are ``0..vertex_count-1``. Text I/O uses 1-indexed labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from srikit.errors import ConsistencyError, InputError
from srikit.profiles import ColorProfile

BRUTE_FORCE_EDGE_LIMIT = 20


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InputError(f"edge {e} out of range for {self.vertex_count} vertices")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return cls(vertex_count, frozenset(edges))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset(combinations(range(n), 2)))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood bitmask per vertex."""
        out = [0] * self.vertex_count
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    def neighbors(self, v: int) -> frozenset[int]:
        m = self.masks[v]
        return frozenset(u for u in range(self.vertex_count) if m >> u & 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def _check_vertices(g: SimpleGraph, s: Iterable[int]) -> list[int]:
    s = list(s)
    for v in s:
        if not 0 <= v < g.vertex_count:
            raise InputError(f"vertex {v} out of range for {g.vertex_count} vertices")
    return s


def is_independent(g: SimpleGraph, s: Iterable[int]) -> bool:
    s = _check_vertices(g, s)
    mask = 0
    for v in s:
        mask |= 1 << v
    return all(not (g.masks[v] & mask) for v in s)


def dominating_vertices(g: SimpleGraph) -> frozenset[int]:
    full = (1 << g.vertex_count) - 1
    return frozenset(v for v in g.vertices if g.masks[v] | (1 << v) == full)


def complete_multipartite(profile: ColorProfile | Iterable[int]) -> SimpleGraph:
    sizes = profile.sizes if isinstance(profile, ColorProfile) else tuple(profile)
    color = [j for j, r in enumerate(sizes) for _ in range(r)]
    n = len(color)
    return SimpleGraph(
        n, frozenset((u, v) for u, v in combinations(range(n), 2) if color[u] != color[v])
    )


def delete_vertices(g: SimpleGraph, s: Iterable[int]) -> tuple[SimpleGraph, dict[int, int]]:
    """Induced subgraph on the complement of ``s``.

    Survivors are relabelled ``0..`` in increasing order; the returned map
    sends old labels to new ones.
    """
    drop = set(_check_vertices(g, s))
    keep = [v for v in g.vertices if v not in drop]
    relabel = {v: i for i, v in enumerate(keep)}
    edges = frozenset(
        (relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel
    )
    return SimpleGraph(len(keep), edges), relabel


def disjoint_union_vertex(g: SimpleGraph) -> SimpleGraph:
    """``g`` plus one isolated vertex."""
    return SimpleGraph(g.vertex_count + 1, g.edges)


# -- acyclic orientations ---------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """Direction for every edge of ``base``: ``direction[(u, v)]`` is ``(tail, head)``."""

    base: SimpleGraph
    direction: Mapping[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        d = {}
        for e, arc in dict(self.direction).items():
            key = (min(e), max(e))
            if key not in self.base.edges:
                raise InputError(f"{e} is not an edge of the base graph")
            if sorted(arc) != list(key):
                raise InputError(f"direction {arc} is not an ordering of edge {key}")
            d[key] = tuple(arc)
        if set(d) != set(self.base.edges):
            raise InputError("orientation must direct every edge exactly once")
        object.__setattr__(self, "direction", d)

    @classmethod
    def from_arcs(cls, base: SimpleGraph, arcs: Iterable[tuple[int, int]]) -> "Orientation":
        return cls(base, {(min(a), max(a)): tuple(a) for a in arcs})

    def arcs(self) -> list[tuple[int, int]]:
        return sorted(self.direction.values())

    def is_acyclic(self) -> bool:
        n = self.base.vertex_count
        indeg = [0] * n
        out = [[] for _ in range(n)]
        for t, h in self.direction.values():
            out[t].append(h)
            indeg[h] += 1
        stack = [v for v in range(n) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen == n

    def __hash__(self):
        return hash((self.base, tuple(self.arcs())))

    def __eq__(self, other):
        return (
            isinstance(other, Orientation)
            and self.base == other.base
            and self.direction == other.direction
        )


def enumerate_acyclic_orientations(g: SimpleGraph):
    """Yield every acyclic orientation of ``g``.

    Edges are oriented one at a time; a partial orientation that already
    closes a directed cycle is abandoned, since every completion of it is
    cyclic too.
    """
    edges = g.sorted_edges()
    n = g.vertex_count
    reach = [1 << v for v in range(n)]  # reach[v]: vertices reachable from v
    arcs: list[tuple[int, int]] = []

    def rec(idx, reach):
        if idx == len(edges):
            yield Orientation.from_arcs(g, arcs)
            return
        u, v = edges[idx]
        for a, b in ((u, v), (v, u)):
            if reach[b] >> a & 1:
                continue
            new = [r | reach[b] if r >> a & 1 else r for r in reach]
            arcs.append((a, b))
            yield from rec(idx + 1, new)
            arcs.pop()

    yield from rec(0, reach)


def _aco_brute_force(g: SimpleGraph) -> int:
    edges = g.sorted_edges()
    total = 0
    stack = [(0, tuple(1 << v for v in range(g.vertex_count)))]
    while stack:
        idx, reach = stack.pop()
        if idx == len(edges):
            total += 1
            continue
        u, v = edges[idx]
        for a, b in ((u, v), (v, u)):
            if reach[b] >> a & 1:
                continue
            rb = reach[b]
            stack.append((idx + 1, tuple(r | rb if r >> a & 1 else r for r in reach)))
    return total


@lru_cache(maxsize=None)
def _aco_dc(edges: frozenset[tuple[int, int]]) -> int:
    # a(G) = a(G - e) + a(G / e); parallel edges after contraction are merged.
    if not edges:
        return 1
    degree: dict[int, int] = {}
    for u, v in edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    # a pendant edge contributes a factor of 2
    for u, v in edges:
        if degree[u] == 1 or degree[v] == 1:
            return 2 * _aco_dc(edges - {(u, v)})
    u, v = min(edges)
    deleted = edges - {(u, v)}
    contracted = set()
    for a, b in deleted:
        a = u if a == v else a
        b = u if b == v else b
        if a != b:
            contracted.add((min(a, b), max(a, b)))
    return _aco_dc(deleted) + _aco_dc(frozenset(contracted))


def count_acyclic_orientations(
    g: SimpleGraph, method: str = "auto", brute_force_limit: int = BRUTE_FORCE_EDGE_LIMIT
) -> int:
    """Number of acyclic orientations of ``g``.

    ``method`` is ``"deletion_contraction"``, ``"brute_force"``, ``"both"``,
    or ``"auto"`` (both when ``g`` has at most ``brute_force_limit`` edges,
    deletion-contraction otherwise). Running both raises
    :class:`ConsistencyError` on disagreement.
    """
    if method == "auto":
        method = "both" if len(g.edges) <= brute_force_limit else "deletion_contraction"
    if method == "deletion_contraction":
        return _aco_dc(g.edges)
    if method == "brute_force":
        return _aco_brute_force(g)
    if method == "both":
        a, b = _aco_dc(g.edges), _aco_brute_force(g)
        if a != b:
            raise ConsistencyError(f"deletion-contraction {a} != brute force {b}")
        return a
    raise InputError(f"unknown method {method!r}")


# -- text format ------------------------------------------------------------


def parse_graph_text(text: str) -> SimpleGraph:
    """Parse ``n=<count>`` followed by one ``u v`` edge per line (1-indexed)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise InputError("graph text must start with a line 'n=<count>'")
    try:
        n = int(lines[0].replace(" ", "")[2:])
    except ValueError:
        raise InputError(f"bad vertex count line {lines[0]!r}") from None
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise InputError(f"bad edge line {ln!r}; expected 'u v'")
        try:
            u, v = int(parts[0]) - 1, int(parts[1]) - 1
        except ValueError:
            raise InputError(f"bad edge line {ln!r}") from None
        edges.append((u, v))
    return SimpleGraph.from_edges(n, edges)


def format_graph_text(g: SimpleGraph) -> str:
    lines = [f"n={g.vertex_count}"] + [f"{u + 1} {v + 1}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def all_graphs(n: int):
    """Every labelled simple graph on ``n`` vertices."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield SimpleGraph(n, frozenset(p for i, p in enumerate(pairs) if bits >> i & 1))


def canonical_form(g: SimpleGraph) -> tuple[tuple[int, int], ...]:
    """Lexicographically least sorted edge list over all vertex relabellings."""
    from itertools import permutations

    best = None
    for perm in permutations(range(g.vertex_count)):
        key = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return best if best is not None else ()


@lru_cache(maxsize=None)
def isomorphism_classes(n: int) -> tuple[SimpleGraph, ...]:
    """One canonical representative per isomorphism class of graphs on ``n`` vertices.

    Built by attaching a new vertex to every class on ``n - 1`` vertices in
    every possible way, then deduplicating by canonical form.
    """
    if n == 0:
        return (SimpleGraph(0),)
    seen = {}
    for g in isomorphism_classes(n - 1):
        for bits in range(1 << (n - 1)):
            edges = set(g.edges) | {(v, n - 1) for v in range(n - 1) if bits >> v & 1}
            key = canonical_form(SimpleGraph(n, frozenset(edges)))
            seen.setdefault(key, SimpleGraph(n, frozenset(key)))
    return tuple(seen[k] for k in sorted(seen))
