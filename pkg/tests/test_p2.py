from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p3helix.p2 import (
    DyadicRational,
    NonIntegralCharacter,
    PoleInDot,
    delta_bounds,
    delta_of_mu,
    dot,
    dyadics_between,
    epsilon_p2,
    hilbert_p,
    is_stable_character_p2,
    min_rank_of_order,
    slope_data,
)


def test_hilbert_polynomial_oracle():
    from math import comb

    for n in range(0, 10):
        assert hilbert_p(F(n)) == comb(n + 2, 2)


def test_slope_data_examples():
    d = slope_data(0)
    assert (d.r, d.delta, d.chi) == (1, 0, 1)
    d = slope_data(F(1, 2))
    assert (d.r, d.delta, d.chi) == (2, F(3, 8), 3)
    d = slope_data(F(2, 5))
    assert (d.r, d.delta) == (5, F(12, 25))


def test_dot_examples():
    assert dot(0, 1) == F(1, 2)
    assert dot(0, F(1, 2)) == F(2, 5)
    assert dot(F(1, 2), 1) == F(3, 5)
    with pytest.raises(PoleInDot):
        dot(0, 3)


@pytest.mark.parametrize("t, alpha", [("1/2", F(1, 2)), ("1/4", F(2, 5)), ("3/4", F(3, 5)), ("3/2^3", F(12, 29))])
def test_epsilon_p2_examples(t, alpha):
    assert epsilon_p2(t) == alpha


def test_integer_fixed_points():
    for n in range(-4, 5):
        assert epsilon_p2(n) == n


def test_dyadic_parsing():
    assert DyadicRational.parse("3/2^3") == DyadicRational(3, 3)
    assert DyadicRational.parse("6/16") == DyadicRational(3, 3)
    with pytest.raises(ValueError):
        DyadicRational.parse("1/3")
    with pytest.raises(ValueError):
        DyadicRational(2, 1)


def test_monotone_and_integral_to_order_8():
    alphas = [epsilon_p2(t) for t in dyadics_between(0, 1, 8)]
    assert all(a < b for a, b in zip(alphas, alphas[1:]))
    for a in alphas:
        d = slope_data(a)
        assert (d.r * a).denominator == 1
        assert d.chi.denominator == 1


def test_min_ranks_grow():
    ranks = [min_rank_of_order(q) for q in range(9)]
    assert ranks == [1, 2, 5, 13, 34, 89, 233, 610, 1597]


def test_delta_examples():
    b = delta_bounds(0, 0)
    assert b.lower == 1 and b.certified and b.witness == 0
    assert delta_of_mu(F(1, 2), 1) == F(5, 8)


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=-2, max_value=2, max_denominator=12), st.integers(0, 4))
def test_delta_monotone_in_cutoff(mu, c):
    lo, hi = delta_bounds(mu, c), delta_bounds(mu, c + 1)
    assert lo.lower <= hi.lower
    # the bound from cutoff c covers every slope added at c + 1
    assert hi.lower <= lo.upper


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-1, max_value=1, max_denominator=9))
def test_delta_periodic(mu):
    assert delta_of_mu(mu, 4) == delta_of_mu(mu + 1, 4)


def test_stability_examples():
    assert is_stable_character_p2(1, 0, 0, 3) == "exceptional"
    assert is_stable_character_p2(2, F(1, 2), F(3, 8), 3) == "exceptional"
    assert is_stable_character_p2(1, 0, 1, 3) == "stable"
    assert is_stable_character_p2(1, 0, 2, 3) == "stable"
    # rank 2, c1 = 0, c2 = 1: Delta = 1/2 is below delta(0) = 1
    assert is_stable_character_p2(2, 0, F(1, 2), 3) == "unstable"


def test_stability_integrality():
    with pytest.raises(NonIntegralCharacter):
        is_stable_character_p2(2, F(1, 2), F(1, 3), 3)
    with pytest.raises(ValueError):
        is_stable_character_p2(0, 0, 1, 3)


def test_undecided_when_cutoff_too_small():
    # close to the boundary and with too few slopes enumerated nothing is certified
    b = delta_bounds(F(2, 5), 0)
    assert not b.certified
    r, mu = 5, F(2, 5)
    delta = (b.lower + b.upper) / 2
    # pick a Delta with integral invariants strictly inside the gap, if any
    for c2_num in range(-50, 50):
        ch2 = F(c2_num, 2)
        d = mu * mu / 2 - ch2 / r
        if b.lower <= d < b.upper and (r * (hilbert_p(mu) - d)).denominator == 1:
            c1 = r * mu
            if (c1 * c1 / 2 - ch2).denominator == 1:
                assert is_stable_character_p2(r, mu, d, 0) == "undecided"
                return
    pytest.skip(f"no integral character in ({b.lower}, {b.upper}); midpoint {delta}")
