"""
The companion picture on P^2
============================

On P^2 the exceptional slopes come from the integers by a "dot" operation on
neighbouring slopes.  The function delta(mu) bounds the discriminant of
stable sheaves from below.
"""

from fractions import Fraction

from p3helix.p2 import delta_bounds, dyadics_between, epsilon_p2, is_stable_character_p2, slope_data

for t in dyadics_between(0, 1, 3):
    a = epsilon_p2(t)
    d = slope_data(a)
    print(f"eps({str(t):>3}) = {str(a):>6}   r = {d.r:>3}   Delta = {d.delta}")

# delta is certified by bounding every slope not yet enumerated
for mu in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 5)):
    for cutoff in (1, 3, 6):
        b = delta_bounds(mu, cutoff)
        print(f"mu = {str(mu):>4} cutoff {cutoff}: delta in [{b.lower}, {b.upper}]  certified={b.certified}")

print(is_stable_character_p2(1, 0, 1, 4))  # ideal sheaf of a point
print(is_stable_character_p2(2, Fraction(1, 2), Fraction(3, 8), 4))  # tangent-type bundle
print(is_stable_character_p2(2, 0, Fraction(1, 2), 4))
