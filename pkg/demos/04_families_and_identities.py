"""The classified families and the exact identities attached to them.

The odd-q degree-4 exceptional family comes with two checkable identities:
its difference numerator factors into three conjugate bilinear forms over
GF(q^3), and it has an order-3 stabilizing pair (mu, nu) given by explicit
trace formulas.
"""

from permrat import GF, branch_points, ratfunc_to_text
from permrat.families import (difference_factorization_check, is_additive,
                              quartic_exceptional, quartic_parameters,
                              quartic_symmetries, redei, roots_form_group,
                              table1_entries)
from permrat.polys import Poly
from permrat.textforms import poly_from_text

F5 = GF(5)
a, b = F5(1), F5(1)
f = quartic_exceptional(a, b)
print("quartic family member for (alpha, beta) = (1, 1):", f)
print("difference-numerator factorization verified:",
      difference_factorization_check(a, b))
print("branch points sit in GF(5^3):", branch_points(f))

mu, nu = quartic_symmetries(a, b)
print("stabilizing pair: mu =", mu, ", nu =", nu)
print("mu has order", mu.order(), "under composition")

print("\nconjugated power maps (delta a quadratic generator):")
for q in (5, 7):
    F = GF(q)
    r = redei(3, F.extension(2).gen())
    print(f"  degree 3 over GF({q}):", ratfunc_to_text(r))

F2 = GF(2)
L = poly_from_text(F2, "x^4+x^2+x")
print("\nx^4+x^2+x over GF(2) is additive:", is_additive(L))
print("its roots form an additive group (split over GF(8)):",
      roots_form_group(L, 3))

print("\nthe finite table of non-exceptional degree-4 classes:")
for q in (2, 3, 4, 5, 7, 8):
    rows = table1_entries(q)
    print(f"  q={q}:")
    for e in rows:
        print(f"    {ratfunc_to_text(e.func):34s}  stabilizer {e.stabilizer_size}")
