import pytest
from hypothesis import given, settings, strategies as st

from srikit.decorations import (
    _decorations,
    count_fixed_points,
    decoration_sign,
    enumerate_decorations,
    enumerate_fixed_points,
    enumerate_mismatched,
    format_decoration,
    has_permission,
    hue_involution,
    hue_step,
    is_fixed_point,
    is_mismatched,
    make_decoration,
    number_chain,
    parse_decoration,
    permission_list,
    underline_involution,
    validate,
    wants_to_merge,
)
from srikit.errors import InputError
from srikit.profiles import ColorProfile, ExponentProfile, all_exponent_profiles
from srikit.psi_engine import losev_manin_profile, multinomial_oracle
from srikit.verify import check_profile

GOLDEN_FILES = [
    "decoration.txt",
    "decoration_underline.txt",
    "hue_chain.txt",
    "mod_hue_chain.txt",
    "mod_hue_chain_merged.txt",
    "nq.txt",
    "nq_split.txt",
    "fixed_point.txt",
    "fixed_point_running.txt",
]


@pytest.mark.parametrize("name", GOLDEN_FILES)
def test_golden_round_trip(name, golden, golden_text):
    d = golden(name)
    validate(d)
    assert format_decoration(d) == golden_text(name)
    assert parse_decoration(str(d)) == d


def test_parser_rejects_bad_markers(golden_text):
    text = golden_text("hue_chain.txt")
    with pytest.raises(InputError):
        parse_decoration(text.replace("[_6]", "[6]"))  # forced underline missing
    with pytest.raises(InputError):
        parse_decoration(text.replace("R |", "A |", 1))
    with pytest.raises(InputError):
        parse_decoration(text.replace("9:A{10}", "9:A{11}"))


def test_running_example(golden):
    d = golden("decoration.txt")
    assert sorted(d.underlined) == [3, 6, 9, 11, 19]
    assert decoration_sign(d) == d.sign == -1
    assert not is_mismatched(d)
    u = underline_involution(d)
    assert u == golden("decoration_underline.txt")
    assert u.sign == 1 and underline_involution(u) == d


def test_running_example_is_enumerated(golden):
    d = golden("decoration.txt")
    assert any(x == d for x in _decorations(d.exponents, False, partitions=[d.blocks]))


def test_validation_errors():
    e = ExponentProfile.from_points((3, 3, 1), {1: 2, 4: 2})
    with pytest.raises(InputError):
        make_decoration(e, {2: (4,), 3: (4,), 5: (1,), 6: (4,)}, [])  # hue counts off
    with pytest.raises(InputError):
        make_decoration(e, {1: (4,), 2: (4,), 3: (4,), 5: (1,), 6: (1,)}, [])  # crossed-out has a hue
    with pytest.raises(InputError):
        make_decoration(e, {2: (4,), 3: (4,), 5: (1,), 6: (1,)}, [5])  # underline on mismatched hue


def test_chains_and_permission(golden):
    d = golden("hue_chain.txt")
    assert is_mismatched(d)
    ch = number_chain(d, 0)
    assert ch.chains == ((2, 5), (3,), (4, 8))
    assert ch.hue_chains == (((5, 6), (1,)), ((7,),), ((8,), (7,)))
    s = [x for x in range(1, 18) if d.hues[x] in ((1,), (7,), (8,))]
    assert permission_list(d, s, 0) == [5, 3, 4, 8, 11, 13]
    assert permission_list(d, [], 0) == []
    assert permission_list(d, [16, 9], 1) == [9, 16]
    assert wants_to_merge(d, 1, (5, 6)) and wants_to_merge(d, 7, (8,))
    p = has_permission(d, 1, (5, 6))
    assert p.granted and p.situation == "Q" and p.q == 2 and p.r == 5
    assert not has_permission(d, 7, (8,)).granted

    m = golden("mod_hue_chain.txt")
    assert number_chain(m, 0).chains == ((2, 5), (3, 8), (4,))
    assert has_permission(m, 7, (8,)).granted


def test_nq_chains(golden):
    d = golden("nq.txt")
    assert number_chain(d, 1).chains == ((4, 6, 9, 5), (7,), (10,))
    assert not has_permission(d, 6, (7, 8)).granted
    assert not has_permission(d, 5, (9,)).granted


def test_merge_and_split_worked_examples(golden):
    d = golden("mod_hue_chain.txt")
    step = hue_step(d)
    assert (step.case, step.t, step.situation, step.q) == ("merge", 1, "Q", 2)
    assert step.result == golden("mod_hue_chain_merged.txt")
    back = hue_step(step.result)
    assert (back.case, back.situation, back.q) == ("split", "Q", 2)
    assert back.result == d

    nq = golden("nq.txt")
    step = hue_step(nq)
    assert (step.case, step.situation) == ("split", "NQ")
    assert step.result == golden("nq_split.txt")
    assert hue_involution(step.result) == nq
    assert hue_step(step.result).case == "merge"


def test_fixed_point_examples(golden):
    assert is_fixed_point(golden("fixed_point.txt"))
    d = golden("fixed_point_running.txt")
    assert wants_to_merge(d, 1, (3,))
    assert not has_permission(d, 1, (3,)).granted
    assert is_fixed_point(d)
    assert not is_fixed_point(golden("hue_chain.txt"))


def test_enumeration_examples():
    point = ExponentProfile(ColorProfile((1, 1, 1)), (0, 0, 0))
    decs = list(enumerate_decorations(point))
    assert len(decs) == 1 and decs[0].sign == 1
    assert len(list(enumerate_decorations(ExponentProfile(ColorProfile((1,) * 5), (2, 0, 0, 0, 0))))) == 1
    assert count_fixed_points(ExponentProfile(ColorProfile((1,) * 5), (1, 1, 0, 0, 0))) == 2
    nine = ExponentProfile.from_points((5, 4, 1), {1: 2, 6: 2, 7: 3})
    fps = list(enumerate_fixed_points(nine))
    assert len(fps) == 9 and all(is_fixed_point(d) for d in fps)
    assert list(enumerate_fixed_points(losev_manin_profile(5, 2, 1, [1]))) == []


def test_every_enumerated_decoration_validates():
    for e in all_exponent_profiles(6):
        for d in enumerate_decorations(e):
            validate(d)
        assert all(is_mismatched(d) for d in enumerate_mismatched(e))


@pytest.mark.parametrize("n", range(3, 8))
def test_involution_sweep(n):
    for e in all_exponent_profiles(n, n):
        rec = check_profile(e)
        assert rec.ok, (rec.profile, rec.messages)


@st.composite
def profiles(draw, max_n=8):
    m = draw(st.integers(3, 5))
    sizes = [draw(st.integers(1, 3)) for _ in range(m)]
    n = sum(sizes)
    if n > max_n:
        sizes = [1] * m
        n = m
    ks = [0] * n
    for _ in range(n - 3):
        ks[draw(st.integers(0, n - 1))] += 1
    return ExponentProfile.from_points(sizes, {i + 1: k for i, k in enumerate(ks) if k}, normalize=True)


@settings(max_examples=40, deadline=None)
@given(profiles())
def test_fixed_points_match_oracle(e):
    assert count_fixed_points(e) == multinomial_oracle(e)


@settings(max_examples=25, deadline=None)
@given(profiles(max_n=7), st.data())
def test_format_parse_round_trip(e, data):
    decs = list(enumerate_decorations(e))
    d = decs[data.draw(st.integers(0, len(decs) - 1))]
    assert parse_decoration(format_decoration(d)) == d
