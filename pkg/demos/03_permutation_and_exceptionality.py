"""Permutation testing across extensions and certified exceptionality.

A function is exceptional when it permutes P^1(F_{q^l}) for infinitely
many l.  The decision procedure reports a certificate level on YES (a
permutation check past the size bound), a failing level or a matched
non-exceptional family on NO, and can only answer Undetermined from
degree 5 up.
"""

from permrat import GF, ratfunc_from_text
from permrat.families import quartic_exceptional, redei_canonical
from permrat.permtest import (decide_exceptional, exceptionality_bound,
                              is_permutation)

F7 = GF(7)
f = ratfunc_from_text(F7, "x^4+3*x")
print("x^4+3x over GF(7) permutes P^1:", is_permutation(f, 1))
print("  ... but already fails over GF(49):", is_permutation(f, 2))
print("verdict:", decide_exceptional(f))

print("\nsize bounds: degree 3 ->", exceptionality_bound(3),
      ", degree 4 ->", exceptionality_bound(4),
      ", degree 8 ->", exceptionality_bound(8))

qf = quartic_exceptional(GF(5)(1), GF(5)(1))
print("\nthe quartic family member", qf)
print("verdict:", decide_exceptional(qf))

r = redei_canonical(3, F7)
print("\nconjugated power map of degree 3 over GF(7):", r)
print("permutation levels 1..3:", [is_permutation(r, l) for l in (1, 2, 3)])
print("verdict:", decide_exceptional(r))

print("\nx^2 over GF(2):", decide_exceptional(ratfunc_from_text(GF(2), "x^2")))
print("x^9 over GF(3) (inseparable, reduces to a Moebius core):",
      decide_exceptional(ratfunc_from_text(GF(3), "x^9")))
print("x^5 over GF(2) (degree 5: certified through the window):",
      decide_exceptional(ratfunc_from_text(GF(2), "x^5")))
