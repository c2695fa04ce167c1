"""Finite fields and extension towers.

Build prime fields, extensions with canonical or explicit moduli, and
towers; exercise Frobenius, trace and squareness.
"""

from permrat import (GF, embed, field_to_text, find_irreducible, frobenius,
                     is_square, lies_in, trace)
from permrat.polys import minimal_polynomial

F2, F5 = GF(2), GF(5)
print("canonical moduli are the lex-least monic irreducibles:")
for d in (1, 2, 3, 4):
    print(f"  degree {d} over GF(2):", find_irreducible(F2, d))
print("  degree 3 over GF(5):", find_irreducible(F5, 3))

F4 = GF(4)
w = F4.gen()
print("\nGF(4) generator satisfies w^2 =", w * w)
print("frobenius(w) =", frobenius(w, 1, F2), " trace to GF(2):", trace(w, F2))

print("\nsquares in GF(5):", sorted({(F5(x) * F5(x)).val for x in range(5)}))
print("is_square(2 in GF(5)):", is_square(F5(2)))
print("in GF(8) everything is a square:", all(is_square(e) for e in GF(8).elements()))

T = F4.extension(3)     # a 64-element field built over GF(4)
print("\ntower:", field_to_text(T), "of order", T.order)
g = T.gen()
print("its generator prints with level markers:", g, "+", embed(w, T))
print("embedded GF(4) generator still lies in GF(4):", lies_in(embed(w, T), F4))

e = embed(F5(2), F5.extension(3))
print("\nminimal polynomial over GF(5) of the embedded element 2:",
      minimal_polynomial(e, F5))

F125 = F5.extension(3)
gamma = F125.gen()
print("gamma^(5^3) == gamma:", frobenius(gamma, 3, F5) == gamma)
print("trace of gamma down to GF(5):", trace(gamma, F5))
