from itertools import product

import pytest

from srikit.errors import ConsistencyError, InputError
from srikit.profiles import ColorProfile, ExponentProfile, canonical_exponents
from srikit.psi_engine import (
    border_strip_profile,
    color_merge_check,
    intersection_number,
    losev_manin_profile,
    losev_manin_value,
    m0n_profile,
    merge_colors,
    multinomial,
    multinomial_oracle,
)

NINE = ExponentProfile.from_points((5, 4, 1), {1: 2, 6: 2, 7: 3})


def test_multinomial():
    assert multinomial(4, [2, 1, 1]) == 12
    assert multinomial(3, [2, 2]) == 0
    assert multinomial(2, [3, -1]) == 0
    assert multinomial(0, []) == 1


def test_section_value():
    for method in ("fixed_points", "oracle", "both"):
        assert intersection_number(NINE, method) == 9
    with pytest.raises(InputError):
        intersection_number(NINE, "guess")


def test_point():
    assert multinomial_oracle(ExponentProfile(ColorProfile((1, 1, 1)), (0, 0, 0))) == 1


@pytest.mark.parametrize("r, value", [(1, 1), (2, 5), (3, 61)])
def test_border_strip_small(r, value):
    assert intersection_number(border_strip_profile(r), "both") == value


def test_m0n_recovery_small():
    for n in range(3, 8):
        for ks in product(range(n - 2), repeat=n):
            if sum(ks) == n - 3:
                assert intersection_number(m0n_profile(ks), "both") == multinomial(n - 3, ks)


def test_losev_manin():
    assert losev_manin_value(7, 4, 2) == 15 == intersection_number(losev_manin_profile(7, 4, 2), "both")
    assert losev_manin_value(5, 4, 0) == 1
    assert losev_manin_value(5, 2, 1, [1]) == 0 == intersection_number(losev_manin_profile(5, 2, 1, [1]))
    with pytest.raises(InputError):
        losev_manin_profile(5, 3, 2)


def test_normalization_is_value_preserving():
    raw = ExponentProfile.from_points((3, 3, 1), {2: 2, 5: 2}, normalize=True)
    assert raw == ExponentProfile.from_points((3, 3, 1), {1: 2, 4: 2})
    with pytest.raises(InputError):
        ExponentProfile.from_points((3, 3, 1), {2: 2, 5: 2})


def test_color_merge():
    e = ExponentProfile(ColorProfile((1,) * 5), (2, 0, 0, 0, 0))
    assert color_merge_check(e, 3, 4)
    a = ExponentProfile.from_points((2, 2, 1, 1), {1: 2, 3: 1})
    b = merge_colors(a, 2, 3)
    assert b.profile.sizes == (2, 2, 2)
    assert intersection_number(a) == intersection_number(b)
    with pytest.raises(InputError):
        merge_colors(a, 0, 3)
    with pytest.raises(InputError):
        merge_colors(ExponentProfile.from_points((2, 1, 1), {1: 1}), 1, 2)


def test_color_merge_exhaustive():
    for sizes in [(2, 1, 1, 1, 1), (1, 2, 1, 2, 1), (3, 2, 1, 1)]:
        for e in canonical_exponents(ColorProfile(sizes)):
            zero = [j for j in range(e.profile.m) if e.color_total(j) == 0]
            if len(zero) >= 2 and e.profile.m > 3:
                assert color_merge_check(e, zero[0], zero[1])


def test_single_color_bounds():
    # All exponents on a fully boxed first color: both closed-form bounds hold.
    for r in range(2, 5):
        for e in canonical_exponents(ColorProfile((r, 2, 2))):
            if e.ell(0) != r or e.color_total(0) != e.n - 3:
                continue
            ks = [e.k(i) for i in range(1, r + 1)]
            value = intersection_number(e, "oracle")
            assert multinomial(e.n - 3 - r, [k - 1 for k in ks]) <= value <= multinomial(e.n - 3, ks)
            assert value > 0


def test_both_detects_mismatch(monkeypatch):
    import srikit.psi_engine as pe

    monkeypatch.setattr(pe, "multinomial_oracle", lambda e: -1)
    with pytest.raises(ConsistencyError):
        pe.intersection_number(NINE, "both")


def _naive_oracle(e):
    from srikit.osp import set_partitions

    total = 0
    for part in set_partitions(range(1, e.n + 1)):
        if any(len({e.profile.color_of[i] for i in b}) > 1 for b in part):
            continue
        total += (-1) ** sum(len(b) - 1 for b in part) * multinomial(
            len(part) - 3, [e.k_of(b) - len(b) + 1 for b in part]
        )
    return total


def test_grouped_oracle_matches_naive_sum():
    from srikit.profiles import all_exponent_profiles

    for e in all_exponent_profiles(7):
        assert multinomial_oracle(e) == _naive_oracle(e)
