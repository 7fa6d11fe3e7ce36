import pytest

from srikit.errors import InputError
from srikit.graph_core import Orientation, SimpleGraph, all_graphs, count_acyclic_orientations
from srikit.osp import OrderedSetPartition as OSP, merge_split_involution
from srikit.strata import (
    DualTree,
    aco_to_caterpillar,
    alternating_strata_sum,
    caterpillar_to_aco,
    disconnected_region,
    enumerate_millipedes,
    enumerate_stable_trees,
    format_tree,
    left_right_fixed_points,
    left_right_involution,
    strata_report,
    up_down_involution,
)
from srikit.verify import check_graph, check_independent_osp_identity, with_poles

K4 = SimpleGraph.complete(4)
INF = float("inf")

# Leaves 1..6 of the left-right worked example, stored 0-indexed.
LR_GRAPH = SimpleGraph.from_edges(6, [(0, 1), (0, 3), (1, 3), (2, 4)])


def lr(*blocks):
    return OSP.of(*[[x - 1 for x in b] for b in blocks])


def test_k4_trees():
    trees = list(enumerate_stable_trees(K4, 2, 3))
    assert len(trees) == 4
    assert sorted(t.internal_edge_count for t in trees) == [0, 1, 1, 1]
    assert alternating_strata_sum(K4, 2, 3) == -2


def test_small_sums():
    assert [t.sign for t in enumerate_stable_trees(SimpleGraph.complete(3), 1, 2)] == [1]
    gamma, p, q = with_poles(SimpleGraph.from_edges(2, []))
    trees = list(enumerate_stable_trees(gamma, p, q))
    assert len(trees) == 3
    assert sum(t.is_millipede() for t in trees) == 3
    assert alternating_strata_sum(gamma, p, q) == -1


@pytest.mark.parametrize("k", range(1, 6))
def test_losev_manin_graph(k):
    gamma, p, q = with_poles(SimpleGraph.from_edges(k, []))
    assert abs(alternating_strata_sum(gamma, p, q)) == 1


def test_poles_must_dominate():
    g = SimpleGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(InputError):
        list(enumerate_stable_trees(g, 0, 3))


def test_k4_up_down_orbits():
    trees = list(enumerate_stable_trees(K4, 2, 3))
    star = next(t for t in trees if t.internal_edge_count == 0)
    partner = up_down_involution(star, K4)
    assert partner != star and partner.sign == -star.sign
    assert partner.spine == (((0, 1),),)
    assert up_down_involution(partner, K4) == star
    fixed = [t for t in trees if up_down_involution(t, K4) == t]
    assert sorted(t.spine for t in fixed) == [((0,), (1,)), ((1,), (0,))]


def test_two_level_branch_contracts():
    gamma, p, q = with_poles(SimpleGraph.complete(3))
    t = DualTree(p, q, ((((0, 1), 2),),))
    u = up_down_involution(t, gamma)
    assert u.spine == (((0, 1), 2),)
    assert up_down_involution(u, gamma) == t
    assert format_tree(u) == format_tree(DualTree(p, q, (((0, 1), 2),)))


def test_disconnected_regions_of_worked_example():
    m = lr([2], [4], [5], [1, 3, 6])
    expect = {2: (set(), INF), 4: (set(), INF), 5: ({2, 4}, 2), 1: ({5}, 5), 3: (set(), INF), 6: ({2, 4, 5}, 2)}
    for c, (region, low) in expect.items():
        got, m_c = disconnected_region(m, LR_GRAPH, c - 1)
        assert {x + 1 for x in got} == region
        assert (m_c + 1 if m_c != INF else INF) == low
    assert disconnected_region(m, LR_GRAPH, 1) == (frozenset(), INF)


def test_left_right_worked_examples():
    assert left_right_involution(lr([2], [4], [5], [1, 3, 6]), LR_GRAPH) == lr([2], [4, 5], [1, 3, 6])
    assert left_right_involution(lr([2], [4, 5], [1, 3, 6]), LR_GRAPH) == lr([2], [4], [5], [1, 3, 6])
    assert left_right_involution(lr([5], [1], [2], [3, 4, 6]), LR_GRAPH) == lr([5], [1], [2], [4], [3, 6])


@pytest.mark.parametrize("n", range(1, 6))
def test_left_right_recovers_merge_split_on_edgeless(n):
    g = SimpleGraph.from_edges(n, [])
    for m in enumerate_millipedes(g):
        assert left_right_involution(m, g) == merge_split_involution(m)


def test_fixed_points_small():
    assert list(left_right_fixed_points(SimpleGraph.from_edges(3, []))) == [OSP.of([2], [1], [0])]
    assert len(list(left_right_fixed_points(SimpleGraph.from_edges(2, [(0, 1)])))) == 2
    assert len(list(left_right_fixed_points(SimpleGraph.complete(3)))) == 6


def test_bijection_edge_cases():
    g = SimpleGraph.from_edges(2, [(0, 1)])
    o = Orientation.from_arcs(g, [(0, 1)])
    m = aco_to_caterpillar(o)
    assert caterpillar_to_aco(m, g) == o
    with pytest.raises(InputError):
        aco_to_caterpillar(Orientation.from_arcs(SimpleGraph.complete(3), [(0, 1), (1, 2), (2, 0)]))
    with pytest.raises(InputError):
        caterpillar_to_aco(OSP.of([0, 1]), SimpleGraph.from_edges(2, []))


@pytest.mark.parametrize("n", range(1, 5))
def test_graph_checks_exhaustive(n):
    for g in all_graphs(n):
        rec = check_graph(g)
        assert rec.ok, rec
        assert check_independent_osp_identity(g)


def test_strata_report():
    rep = strata_report(K4, 2, 3)
    assert rep == {"sum": -2, "aco": 2, "n": 2, "expected_sign": -1, "sign_ok": True}
    assert count_acyclic_orientations(SimpleGraph.from_edges(2, [(0, 1)])) == rep["aco"]
