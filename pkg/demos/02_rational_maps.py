"""Rational functions on the projective line.

Evaluation with infinity, composition and decomposition, Moebius maps,
branch points over their minimal extensions, and the bivariate numerator
of f(X) - f(Y).
"""

from permrat import (GF, INFINITY, compose, branch_points,
                     difference_numerator, evaluate, left_component_witness,
                     moebius_from_triple, p1_points, ratfunc_from_text,
                     symmetries)

F5, F7 = GF(5), GF(7)

f = ratfunc_from_text(F7, "x^4+3*x")
print("f =", f, " degree", f.degree)
print("values on P^1(GF(7)):", [str(evaluate(f, x)) for x in p1_points(F7)])

g = ratfunc_from_text(F5, "x^2 + 1/(x^2)")
print("\ng = x^2 + x^-2 over GF(5); g(inf) =", evaluate(g, INFINITY))
print("branch points of g (degree, point):", branch_points(g))

mu = moebius_from_triple((F5(0), F5(1), INFINITY), (INFINITY, F5(1), F5(0)))
print("\nthe Moebius map sending (0,1,inf) to (inf,1,0):", mu)
print("its inverse composed back:", (mu.inverse() @ mu).as_ratfunc())

h = ratfunc_from_text(F5, "x^2")
ff = compose(ratfunc_from_text(F5, "(x^2+2*x)/(x+3)"), h)
print("\ncomposite of degree 2 after degree 2 has degree", ff.degree)
print("recovered left component:", left_component_witness(h, ff))

dn = difference_numerator(ratfunc_from_text(GF(3), "x^2"))
print("\nnumerator of f(X)-f(Y) for f = x^2 over GF(3):", dn)
print("after dividing by X - Y:", dn.divide_by_x_minus_y())

print("\nself-symmetries of x^2 over GF(3):",
      [m.as_ratfunc() for m in symmetries(ratfunc_from_text(GF(3), 'x^2'), 1)])
print("symmetries of x^3 over the quadratic extension of GF(5):",
      [str(m.as_ratfunc()) for m in symmetries(ratfunc_from_text(F5, 'x^3'), 2)])
