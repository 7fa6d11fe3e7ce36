import pytest

from srikit.errors import ConsistencyError, InputError
from srikit.nonvanishing import (
    AssignmentGraph,
    Slot,
    assignment_graph,
    bounds,
    count_matchings,
    count_mismatched_colorings,
    hall_check,
    nonzero_predicate,
)
from srikit.profiles import ColorProfile, ExponentProfile, all_exponent_profiles
from srikit.psi_engine import intersection_number, losev_manin_profile

INEQ = ExponentProfile.from_points(
    (6, 5, 4, 2, 2), {1: 1, 2: 1, 3: 2, 7: 1, 8: 2, 9: 3, 10: 4, 18: 1, 19: 1}
)
NINE = ExponentProfile.from_points((5, 4, 1), {1: 2, 6: 2, 7: 3})
POINT = ExponentProfile(ColorProfile((1, 1, 1)), (0, 0, 0))


def test_inequalities_example():
    rep = nonzero_predicate(INEQ)
    assert rep.nonzero
    assert [(r.k_total, r.bound) for r in rep.rows if r.applies] == [(4, 13), (10, 15), (2, 16)]
    assert hall_check(assignment_graph(INEQ, "hue"))
    assert hall_check(assignment_graph(INEQ, "color"))


def test_losev_manin_light():
    e = losev_manin_profile(5, 2, 1, [1])
    assert not nonzero_predicate(e)
    assert count_mismatched_colorings(e) == 0
    assert not hall_check(assignment_graph(e, "color"))


def test_single_color_always_nonzero():
    e = ExponentProfile.from_points((3, 2, 2), {1: 1, 2: 1, 3: 2})
    assert nonzero_predicate(e).nonzero


def test_bounds_examples():
    lo, value, hi = bounds(NINE)
    assert value == 9 and lo <= 9 <= hi
    assert count_matchings(POINT) == 1 == count_mismatched_colorings(POINT)
    e = losev_manin_profile(7, 4, 2)
    assert count_mismatched_colorings(e) == 15


def test_single_psi_per_color_coincide():
    e = ExponentProfile(ColorProfile((2, 2, 2)), (1, 0, 1, 0, 1, 0))
    assert count_mismatched_colorings(e) == intersection_number(e) == count_matchings(e)


def test_hall_size_mismatch():
    g = AssignmentGraph((1, 2), (Slot(1, 0, 1),), frozenset({(1, 0), (2, 0)}))
    with pytest.raises(InputError):
        hall_check(g)


def test_hall_disagreement_raises(monkeypatch):
    import srikit.nonvanishing as nv

    monkeypatch.setattr(nv, "_hall_by_classes", lambda g: False)
    with pytest.raises(ConsistencyError):
        nv.hall_check(assignment_graph(NINE))


def test_unknown_variant():
    with pytest.raises(InputError):
        assignment_graph(NINE, "edge")


@pytest.mark.parametrize("n", range(3, 8))
def test_predicates_exhaustive(n):
    for e in all_exponent_profiles(n, n):
        value = intersection_number(e, "oracle")
        lo, hi = count_mismatched_colorings(e), count_matchings(e, "both")
        rep = nonzero_predicate(e)
        assert rep.nonzero == (value > 0) == (lo > 0)
        assert lo <= value <= hi
        assert hall_check(assignment_graph(e, "hue")) == (hi > 0)
        assert hall_check(assignment_graph(e, "color")) == (lo > 0)
        if all(e.ell(j) <= 1 for j in range(e.profile.m)):
            assert lo == value == hi
