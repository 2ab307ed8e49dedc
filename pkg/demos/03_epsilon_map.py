"""
From 3-adic rationals to exceptional bundles
============================================

epsilon sends p/3^q to the Chern character of a constructive exceptional
bundle.  Integers go to line bundles, and the integer part of an index acts by
twisting.  Indices in (0, 1) are produced by walking down the mutation tree.
"""

from p3helix.epsilon import (
    bundle_record,
    epsilon,
    epsilon_inverse,
    indices_up_to,
    mutation_path,
    parents,
    standard_resolutions,
)
from p3helix.kgroup import slope

for t in ["1/3", "2/3", "1/9", "2/9", "4/9", "5/9", "7/9", "8/9"]:
    v = epsilon(t)
    path = " ".join(str(m) for m in mutation_path(t))
    print(f"epsilon({t:>4}) = {str(tuple(str(x) for x in v)):<38} slope {str(slope(v)):>5}  via {path}")

# the defining resolution and the one coming from the helix relation
for r in standard_resolutions("2/9"):
    print(f"  {r.sub} -> {r.middle}^{r.multiplicity} -> {r.quotient}")

# the neighbours of the marked bundle in its distinguished foundation
print("parents(8/9) =", tuple(str(p) for p in parents("8/9")))

# slopes increase with the index, so the inverse is a ternary search
v = epsilon("17/27")
print("epsilon_inverse:", epsilon_inverse(v, 3))

# ranks grow quickly with the order
print("largest rank at order 6:", max(int(epsilon(t).ch0) for t in indices_up_to(6)))

# a full catalog record, including the conjectural cohomology profile
rec = bundle_record("7/3")
print(rec.index, rec.rank, rec.slope, rec.chi, rec.wbn, rec.globally_generated)
