from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p3helix.epsilon import distinguished_foundation, indices_up_to
from p3helix.helix import (
    LEFT_MOVES,
    MOVE_LABEL,
    MUTATION_LABELS,
    RIGHT_MOVES,
    Foundation,
    InvalidFoundation,
    MutationClass,
    MutationMove,
    NonPositiveHom,
    apply_move,
    classify_mutation,
    enumerate_mutations,
    helix_relation_sides,
    left_mutation,
    right_mutation,
    standard_foundation,
    verify_helix_relation,
)
from p3helix.kgroup import ChernCharacter, ch_line, dual, euler_pair, slope, twist
from p3helix.perp import perp
from p3helix.tree import build_tree

O = ch_line
T_MINUS_1 = ChernCharacter.of(3, 1, F(-1, 2), F(1, 6))
TV_2 = twist(dual(twist(T_MINUS_1, 1)), 2)
E_2_9 = ChernCharacter.of(9, 2, -2, F(4, 3))

tree_foundations = [v.foundation for v in build_tree(3).vertices()]


def test_right_mutation_examples():
    assert right_mutation(O(-1), O(0)) == T_MINUS_1
    assert right_mutation(O(-2), O(-1)) == ChernCharacter.of(3, -2, 0, F(2, 3))
    assert right_mutation(O(0), O(1)) == ChernCharacter.of(3, 4, 2, F(2, 3))


def test_left_mutation_examples():
    assert left_mutation(O(1), O(2)) == ChernCharacter.of(3, 2, 0, F(-2, 3))
    assert left_mutation(O(1), O(2)) == TV_2
    assert left_mutation(T_MINUS_1, O(1)) == ChernCharacter.of(17, 5, F(-7, 2), F(5, 6))


def test_non_positive_hom():
    with pytest.raises(NonPositiveHom):
        right_mutation(O(1), O(0))
    with pytest.raises(NonPositiveHom):
        left_mutation(O(2), O(-1))


def test_move_examples_on_standard_foundation():
    s = standard_foundation()
    assert apply_move(s, MutationMove.R1) == Foundation.of(O(0), T_MINUS_1, O(1), O(2))
    assert apply_move(s, "L1") == Foundation.of(O(-1), O(0), TV_2, O(1))
    r0 = apply_move(apply_move(s, "R1"), "R0")
    assert r0 == Foundation.of(O(0), E_2_9, T_MINUS_1, O(1))
    assert r0[1] == 10 * O(0) - O(-2)


def test_foundation_invariants_enforced():
    with pytest.raises(InvalidFoundation):
        Foundation.of(O(0), O(-1), O(1), O(2))
    with pytest.raises(InvalidFoundation):
        Foundation.of(O(0), O(1), O(2))
    with pytest.raises(InvalidFoundation):
        Foundation.of(O(0), O(2), O(3), O(4))  # chi(O(4), O(0)) != 0


def test_enumeration_on_standard_foundation():
    muts = enumerate_mutations(standard_foundation())
    assert len(muts) == 8
    assert len({m.foundation for m in muts}) == 8
    assert len({m.new_bundle for m in muts}) == 8
    assert [m.label for m in muts] == list(MUTATION_LABELS)
    slopes = [slope(m.new_bundle) for m in muts]
    assert slopes == sorted(slopes)


def test_enumeration_on_tangent_foundation():
    # E_{4/11} is R_{T(-1)} O, the right mutation of the first pair
    f = Foundation.of(O(0), T_MINUS_1, O(1), O(2))
    by_label = {m.label: m for m in enumerate_mutations(f)}
    assert slope(by_label["R(E,F)"].new_bundle) == F(4, 11)
    assert by_label["R(E,F)"].foundation[0] == T_MINUS_1
    assert slope(by_label["R(F,G)"].new_bundle) == F(5, 3)


@pytest.mark.parametrize("f", tree_foundations[:40])
def test_eight_distinct_mutations(f):
    muts = enumerate_mutations(f)
    assert len({m.foundation.helix_key() for m in muts}) == 8
    slopes = [slope(m.new_bundle) for m in muts]
    assert all(a < b for a, b in zip(slopes, slopes[1:]))


@pytest.mark.parametrize("f", tree_foundations)
def test_slope_interleaving(f):
    new = {m: apply_move(f, m)[m.new_position] for m in MutationMove}
    e, ff, g, h = f
    chain = [e, new[MutationMove.R0], new[MutationMove.L0], ff, new[MutationMove.R1],
             new[MutationMove.L1], g, new[MutationMove.R2], new[MutationMove.L2], h]
    s = [slope(x) for x in chain]
    assert all(a < b for a, b in zip(s, s[1:]))


@pytest.mark.parametrize("f", tree_foundations)
def test_moves_are_perp_consistent(f):
    for m in MutationMove:
        g = apply_move(f, m)
        i = m.new_position
        others = (g.helix_element(i - 1), g.helix_element(i + 1), g.helix_element(i + 2))
        assert perp(*others) == g[i]


@pytest.mark.parametrize("f", tree_foundations)
def test_involution(f):
    for i in range(3):
        e, ff = f[i], f[i + 1]
        assert euler_pair(ff, e) == 0
        assert left_mutation(ff, right_mutation(e, ff)) == e
        assert right_mutation(left_mutation(e, ff), e) == ff


def test_classification_examples():
    # tau after a right mutation, in move-table layout (new bundle at position 1)
    assert classify_mutation("R", "R(G,H)") is MutationClass.COMMUTING
    # the mutation of the pair (F, R_F E) back to the left undoes gamma
    assert classify_mutation("R", "L(E,F)") is MutationClass.EXTRANEOUS
    # after gamma = L(E,F), tau = (L_E F, E, G, H); rotating the new bundle to
    # position 2 places E at position 3 and G at position 4, so L(E,G) reads L(H,E(4))
    assert classify_mutation("L", "L(H,E(4))") is MutationClass.ADMISSIBLE
    with pytest.raises(ValueError):
        classify_mutation("R", "R(E,H)")


@pytest.mark.parametrize("direction, moves", [("R", RIGHT_MOVES), ("L", LEFT_MOVES)])
def test_classification_partition(direction, moves):
    counts = {c: 0 for c in MutationClass}
    for label in MUTATION_LABELS:
        counts[classify_mutation(direction, label)] += 1
    assert counts == {MutationClass.COMMUTING: 2, MutationClass.ADMISSIBLE: 3, MutationClass.EXTRANEOUS: 3}
    admissible = {lab for lab in MUTATION_LABELS if classify_mutation(direction, lab) is MutationClass.ADMISSIBLE}
    assert admissible == {MOVE_LABEL[m] for m in moves}


@pytest.mark.parametrize("t", indices_up_to(3))
def test_extraneous_mutations_leave_the_subtree(t):
    # exactly one extraneous mutation undoes gamma; all three have new slopes
    # outside the open interval spanned by the neighbours of the marked bundle
    mf = distinguished_foundation(t)
    direction = "R" if t.p % 3 == 1 else "L"
    lo, hi = slope(mf.left()), slope(mf.right())
    muts = enumerate_mutations(mf.foundation)
    extraneous = [m for m in muts if classify_mutation(direction, m.label) is MutationClass.EXTRANEOUS]
    admissible = [m for m in muts if classify_mutation(direction, m.label) is MutationClass.ADMISSIBLE]
    assert all(lo < slope(m.new_bundle) < hi for m in admissible)
    assert all(not lo < slope(m.new_bundle) < hi for m in extraneous)


def test_helix_relation_standard():
    s = standard_foundation()
    assert verify_helix_relation(s)
    (a, b), (c, d) = helix_relation_sides(s)
    assert a == b == T_MINUS_1


@pytest.mark.parametrize("f", tree_foundations)
def test_helix_relation_on_tree(f):
    assert verify_helix_relation(f)


def test_helix_relation_negative_control():
    s = standard_foundation()
    bad = Foundation((s[0], s[1] + ChernCharacter.of(0, 0, 0, 1), s[2], s[3]))
    assert not verify_helix_relation(bad)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(tree_foundations), st.integers(-3, 3))
def test_helix_rotation_and_twist(f, k):
    assert f.rotate(k).helix_key() == f.helix_key()
    assert f.rotate(4 * k) == f.twist(4 * k)
    assert Foundation.from_json(f.to_json()) == f
