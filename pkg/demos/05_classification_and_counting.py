"""Classification with witnesses, exhaustive search, and the three counts.

The search enumerates a normal form, keeps the bijections, merges them
into equivalence classes with verified witnesses, and reports canonical
representatives with stabilizer and orbit sizes.  Orbit sizes assemble
into the closed-form total, which a normalized brute-force count confirms
independently.
"""

from permrat import GF, ratfunc_from_text, ratfunc_to_text
from permrat.classify import (classify, count_classes_exceptional, count_total,
                              count_total_assembled, count_total_bruteforce,
                              search, stabilizer)

res = classify(ratfunc_from_text(GF(7), "x^4+3*x"))
print("classify x^4+3x over GF(7):", res.family,
      "| exceptional:", res.exceptional)
mu, nu = res.witness
print("witness: mu =", mu, ", nu =", nu)

for q in (5, 7, 8):
    print(f"\nsearch, degree 4, q = {q}:")
    for c in search(4, q):
        print(f"  {ratfunc_to_text(c.representative):34s} "
              f"family={c.family} stab={c.stabilizer_size} orbit={c.orbit_size}")

print("\nexceptional class counts:")
for q in (2, 4, 8, 16, 5, 9):
    n, reps = count_classes_exceptional(q)
    print(f"  q={q}: {n} classes, first representative {ratfunc_to_text(reps[0])}")

print("\ntotals three ways:")
for q in (2, 3, 4, 5, 7, 8):
    print(f"  q={q}: formula={count_total(q)} "
          f"assembled={count_total_assembled(q)} "
          f"bruteforce={count_total_bruteforce(q)}")

print("\nstabilizer of x^4 over GF(4) has size",
      stabilizer(ratfunc_from_text(GF(4), "x^4")).size, "= 4^3 - 4")
