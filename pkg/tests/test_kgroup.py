import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import chern_characters
from p3helix.kgroup import (
    ChernCharacter,
    ChernClasses,
    NonIntegral,
    ZeroRank,
    ch_line,
    chern_character_from_classes,
    chern_classes,
    dual,
    euler_chi,
    euler_pair,
    is_candidate_exceptional,
    parse_ch,
    slope,
    twist,
)

T_MINUS_1 = ChernCharacter.of(3, 1, F(-1, 2), F(1, 6))


@pytest.mark.parametrize(
    "n, expected",
    [(0, (1, 0, 0, 0)), (1, (1, 1, F(1, 2), F(1, 6))), (-2, (1, -2, 2, F(-4, 3)))],
)
def test_line_bundles(n, expected):
    assert ch_line(n) == ChernCharacter.of(*expected)


def test_twist_examples():
    assert twist(ch_line(0), 1) == ch_line(1)
    assert twist(T_MINUS_1, 1) == ChernCharacter.of(3, 4, 2, F(2, 3))
    assert twist(T_MINUS_1, 0) == T_MINUS_1


def test_euler_sequence_oracle():
    # 0 -> O(-1) -> O^4 -> T(-1) -> 0
    assert 4 * ch_line(0) - ch_line(-1) == T_MINUS_1
    # total Chern class of T(-1) is 1/(1 - H) = 1 + H + H^2 + H^3
    assert chern_classes(T_MINUS_1) == ChernClasses(1, 1, 1)
    assert chern_classes(twist(T_MINUS_1, 1)) == ChernClasses(4, 6, 4)


def test_dual_examples():
    assert dual(ch_line(1)) == ch_line(-1)
    assert dual(T_MINUS_1) == ChernCharacter.of(3, -1, F(-1, 2), F(-1, 6))


@pytest.mark.parametrize(
    "v, chi",
    [(ch_line(1), 4), (T_MINUS_1, 4), (ChernCharacter.of(9, 2, -2, F(4, 3)), 10)],
)
def test_euler_chi_examples(v, chi):
    assert euler_chi(v) == chi


def test_euler_pair_examples():
    assert euler_pair(ch_line(2), T_MINUS_1) == 0
    assert euler_pair(ch_line(0), ch_line(3)) == 20
    assert euler_pair(ch_line(0), ch_line(-4)) == -1


def test_binomial_oracle():
    for n in range(11):
        assert euler_pair(ch_line(0), ch_line(n)) == math.comb(n + 3, 3)
    for n in (-1, -2, -3):
        assert euler_pair(ch_line(0), ch_line(n)) == 0


def test_pairing_on_lines_depends_on_difference():
    for a in range(-4, 5):
        for b in range(-4, 5):
            assert euler_pair(ch_line(a), ch_line(b)) == euler_chi(ch_line(b - a))


def test_chern_classes_examples():
    assert chern_classes(ch_line(2)) == ChernClasses(2, 0, 0)
    with pytest.raises(NonIntegral):
        chern_classes(ChernCharacter.of(1, 0, F(1, 3), 0))


def test_slope_examples():
    assert slope(T_MINUS_1) == F(1, 3)
    assert slope(ChernCharacter.of(1, 5, 0, 0)) == 5
    assert slope(ChernCharacter.of(17, 5, F(-7, 2), F(5, 6))) == F(5, 17)
    with pytest.raises(ZeroRank):
        slope(ChernCharacter.of(0, 1, 0, 0))


def test_candidate_exceptional_examples():
    assert is_candidate_exceptional(T_MINUS_1)
    assert is_candidate_exceptional(ch_line(0))
    assert not is_candidate_exceptional(ChernCharacter.of(2, 0, 0, 0))
    assert not is_candidate_exceptional(ChernCharacter.of(-1, 0, 0, 0))


def test_parse_and_serialize():
    assert parse_ch("(3,1,-1/2,1/6)") == T_MINUS_1
    assert parse_ch('["3","1","-1/2","1/6"]') == T_MINUS_1
    assert T_MINUS_1.to_json() == ["3", "1", "-1/2", "1/6"]
    assert ChernCharacter.from_json(T_MINUS_1.to_json()) == T_MINUS_1
    with pytest.raises(ValueError):
        parse_ch("(1,2,3)")


def test_no_floats_anywhere():
    v = twist(T_MINUS_1, 7)
    assert all(type(x) is F for x in v)


@given(chern_characters, st.integers(-6, 6), st.integers(-6, 6))
def test_twist_is_a_group_action(v, s, t):
    assert twist(twist(v, s), t) == twist(v, s + t)


@given(chern_characters, chern_characters, chern_characters, st.integers(-5, 5))
def test_bilinearity(a, b, c, k):
    assert euler_pair(a + k * b, c) == euler_pair(a, c) + k * euler_pair(b, c)
    assert euler_pair(c, a + k * b) == euler_pair(c, a) + k * euler_pair(c, b)


@given(chern_characters, chern_characters)
def test_serre_antisymmetry(a, b):
    assert euler_pair(a, b) == -euler_pair(b, twist(a, -4))


@given(chern_characters)
def test_first_slot_structure_sheaf(v):
    assert euler_pair(ch_line(0), v) == euler_chi(v)


@given(chern_characters)
def test_dual_is_involution(v):
    assert dual(dual(v)) == v
    if v.ch0:
        assert slope(dual(v)) == -slope(v)


@given(chern_characters, chern_characters, st.integers(-5, 5))
def test_pairing_twist_invariant(a, b, t):
    assert euler_pair(twist(a, t), twist(b, t)) == euler_pair(a, b)


@given(st.integers(1, 20), st.integers(-20, 20), st.integers(-50, 50), st.integers(-50, 50))
def test_classes_round_trip(r, c1, c2, c3):
    c = ChernClasses(c1, c2, c3)
    assert chern_classes(chern_character_from_classes(r, c)) == c


@given(chern_characters)
def test_serialization_round_trip(v):
    assert ChernCharacter.from_json(v.to_json()) == v
