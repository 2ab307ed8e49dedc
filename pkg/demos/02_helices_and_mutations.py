"""
Helices, mutations and the six admissible moves
===============================================

A foundation (E, F, G, H) of four exceptional bundles generates a helix by
twisting with O(4).  A helix has exactly eight mutations.  Three of them
move away from the helix it was mutated out of; those are the admissible ones.
"""

from p3helix.helix import (
    MOVE_LABEL,
    MutationClass,
    MutationMove,
    apply_move,
    classify_mutation,
    enumerate_mutations,
    helix_relation_sides,
    standard_foundation,
    verify_helix_relation,
)
from p3helix.kgroup import slope

s = standard_foundation()
print("standard foundation, slopes", [str(x) for x in s.slopes()])

# the eight mutations, ordered by the slope of the bundle they introduce
for m in enumerate_mutations(s):
    print(f"  {m.label:<11} new slope {str(slope(m.new_bundle)):>6}")

# the two moves out of the root produce T(-1) and its dual twisted by 2
tau = apply_move(s, MutationMove.R1)
print("R1 ->", [str(x) for x in tau.slopes()])

# after a right mutation the admissible children are R0, L0, R1
for m in MutationMove:
    label = MOVE_LABEL[m]
    kind = classify_mutation("R", label)
    if kind is MutationClass.ADMISSIBLE:
        child = apply_move(tau, m)
        print(f"  {m}: {label:<11} introduces slope {slope(child[m.new_position])}")

# every foundation satisfies the two composite helix relations
for lhs, rhs in helix_relation_sides(tau):
    print("  relation:", lhs, "==", rhs)
print("helix relations hold:", verify_helix_relation(tau))
