"""Permutation-group filters for monodromy of exceptional functions.

A degree-n exceptional function has monodromy pair (A, G) with A
transitive (primitive iff the function is indecomposable, and never A_n
or S_n from degree 5 on), G a proper transitive normal subgroup with
cyclic quotient, and the two point stabilizers sharing exactly one orbit.
Degree 6 admits no primitive pair at all, which is why there are no
indecomposable exceptional functions of degree 6.
"""

from permrat.monodromy import (all_subgroups, cycle_notation, is_primitive,
                               monodromy_filter, symmetric_group)

print("complete subgroup enumeration:")
for n in (2, 3, 4, 5, 6):
    print(f"  S_{n}: {len(all_subgroups(n))} subgroups")

print("\ntransitive subgroups of S_4 and their primitivity:")
for A in all_subgroups(4):
    from permrat.monodromy import is_transitive
    if is_transitive(A):
        gens = ", ".join(cycle_notation(g) for g in A.gens)
        print(f"  order {A.order:2d}  primitive={is_primitive(A)!s:5s}  <{gens}>")

for n in (3, 4, 5):
    pairs = monodromy_filter(n)
    print(f"\nsurviving (A, G) pairs at degree {n}:")
    for p in pairs:
        agens = ", ".join(cycle_notation(g) for g in p.A.gens)
        ggens = ", ".join(cycle_notation(g) for g in p.G.gens)
        print(f"  |A|={p.A.order} <{agens}>  |G|={p.G.order} <{ggens}>")

print("\nprimitive pairs at degree 6:",
      monodromy_filter(6, require_primitive=True) or "none")
