"""
The tangent bundle in numbers
=============================

Every computation in the library happens on Chern characters, stored as four
exact fractions (ch0, ch1, ch2, ch3).  This walk-through rebuilds T(-1) three
different ways and checks that they agree.
"""

from fractions import Fraction

from p3helix.kgroup import ch_line, chern_classes, euler_chi, euler_pair, twist
from p3helix.helix import right_mutation
from p3helix.perp import perp

O = ch_line

# the Euler sequence 0 -> O(-1) -> O^4 -> T(-1) -> 0 gives ch(T(-1)) directly
from_euler = 4 * O(0) - O(-1)
print("Euler sequence:", from_euler)

# the same bundle is the right mutation of the pair (O(-1), O)
print("chi(O(-1), O) =", euler_pair(O(-1), O(0)))
from_mutation = right_mutation(O(-1), O(0))
print("R_O O(-1):     ", from_mutation)

# and it is the unique exceptional class orthogonal to O, O(1), O(2)
from_perp = perp(O(0), O(1), O(2))
print("perp:          ", from_perp)

assert from_euler == from_mutation == from_perp

# the twist by O(1) is multiplication by exp(H); T itself has c = (4, 6, 4)
T = twist(from_perp, 1)
print("ch(T) =", T, " c(T) =", tuple(chern_classes(T)))

# chi(T(-1)) counts its four sections
print("chi(T(-1)) =", euler_chi(from_perp))

# sections of O(n): binomial(n + 3, 3)
print([int(euler_pair(O(0), O(n))) for n in range(8)])

# Serre duality at the numerical level: chi(a, b) = -chi(b, a(-4))
a, b = from_perp, O(2)
print(euler_pair(a, b), "==", -euler_pair(b, twist(a, -4)))

# everything stays exact, no floats anywhere
assert all(isinstance(x, Fraction) for x in twist(T, 11))
