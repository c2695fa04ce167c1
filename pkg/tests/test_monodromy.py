import itertools
import random

import pytest

from permrat.monodromy import (Subgroup, all_subgroups,
                               alternating_group, cycle_notation, generate,
                               identity_perm, is_normal, is_primitive,
                               is_primitive_by_definition, is_transitive,
                               minimal_block, monodromy_filter, orbits, pinv,
                               pmul, point_stabilizer, quotient_is_cyclic,
                               symmetric_group)


def test_subgroup_counts():
    assert [len(all_subgroups(n)) for n in (1, 2, 3, 4)] == [1, 2, 6, 30]


def test_s3_structure():
    subs = all_subgroups(3)
    orders = sorted(s.order for s in subs)
    assert orders == [1, 2, 2, 2, 3, 6]


def test_all_returned_sets_are_groups():
    for n in (3, 4):
        for s in all_subgroups(n):
            ident = identity_perm(n)
            assert ident in s.elements
            for a in s.elements:
                assert pinv(a) in s.elements
                for b in s.elements:
                    assert pmul(a, b) in s.elements


def test_oracle_count_s4():
    """Independent oracle: closures of every subset of S4 of size <= 3."""
    elems = sorted(symmetric_group(4).elements)
    found = {frozenset({identity_perm(4)})}
    for r in (1, 2, 3):
        for gens in itertools.combinations(elems, r):
            found.add(generate(gens, 4))
    assert len(found) == 30 == len(all_subgroups(4))


def test_lagrange_sylow_s5():
    subs = all_subgroups(5)
    assert len(subs) == 156
    orders = [s.order for s in subs]
    assert all(120 % o == 0 for o in orders)
    assert sum(1 for o in orders if o == 8) == 15      # Sylow 2-subgroups
    assert sum(1 for o in orders if o == 3) == 10
    assert sum(1 for o in orders if o == 5) == 6


def test_primitivity_examples():
    c4 = Subgroup(4, generate([(1, 2, 3, 0)], 4), ((1, 2, 3, 0),))
    assert not is_primitive(c4)
    blk = minimal_block(c4, (0, 2))
    assert blk == frozenset({0, 2})
    a4 = alternating_group(4)
    assert is_primitive(a4)
    for n in (2, 3, 4, 5, 6):
        assert is_primitive(symmetric_group(n))
    with pytest.raises(ValueError):
        is_primitive(Subgroup(4, frozenset({identity_perm(4)}), ()))


def test_primitivity_cross_validation():
    for n in (3, 4, 5):
        for A in all_subgroups(n):
            if is_transitive(A):
                assert is_primitive(A) == is_primitive_by_definition(A)


def test_filter_degree_3():
    pairs = monodromy_filter(3)
    assert len(pairs) == 1
    p = pairs[0]
    assert p.A.elements == symmetric_group(3).elements
    assert p.G.elements == alternating_group(3).elements


def test_filter_degree_4():
    pairs = monodromy_filter(4)
    assert len(pairs) == 1
    p = pairs[0]
    assert p.A.elements == alternating_group(4).elements
    assert p.G.order == 4
    assert all(pmul(g, g) == identity_perm(4) for g in p.G.elements)
    assert p.a_primitive


def test_filter_degree_6_primitive_empty():
    assert monodromy_filter(6, require_primitive=True) == []


def test_filter_degree_cap():
    with pytest.raises(ValueError):
        monodromy_filter(7)


def test_filter_conditions_agree_with_naive_recomputation():
    for n in (3, 4):
        subs = all_subgroups(n)
        naive = []
        for A in subs:
            if len(orbits(A.elements, n)) != 1:
                continue
            A1 = frozenset(p for p in A.elements if p[0] == 0)
            a1_orbits = orbits(A1, n)
            for G in subs:
                if not (1 < G.order < A.order and G.elements <= A.elements):
                    continue
                if len(orbits(G.elements, n)) != 1:
                    continue
                if not all(pmul(pmul(a, g), pinv(a)) in G.elements
                           for a in A.elements for g in G.elements):
                    continue
                # cyclic quotient, by brute force over coset powers
                index = A.order // G.order
                cyc = index == 1
                for a in A.elements:
                    if a in G.elements:
                        continue
                    k, cur = 1, a
                    while cur not in G.elements:
                        cur = pmul(cur, a)
                        k += 1
                    if k == index:
                        cyc = True
                        break
                if not cyc:
                    continue
                G1 = frozenset(p for p in G.elements if p[0] == 0)
                common = sum(1 for o in orbits(G1, n) if o in a1_orbits)
                if common == 1:
                    naive.append((A.elements, G.elements))
        got = [(p.A.elements, p.G.elements) for p in monodromy_filter(n)]
        assert sorted(naive, key=sorted) == sorted(got, key=sorted)


def test_filter_output_is_conjugation_stable():
    rng = random.Random(17)
    sym = sorted(symmetric_group(4).elements)
    base = {(frozenset(p.A.elements), frozenset(p.G.elements))
            for p in monodromy_filter(4)}
    for _ in range(10):
        s = rng.choice(sym)
        si = pinv(s)
        relabeled = {(frozenset(pmul(pmul(s, a), si) for a in A),
                      frozenset(pmul(pmul(s, g), si) for g in G))
                     for A, G in base}
        assert relabeled == base


def test_quotient_cyclicity_and_stabilizers():
    s4 = symmetric_group(4)
    a4 = alternating_group(4)
    assert quotient_is_cyclic(s4, a4)
    v4 = Subgroup(4, generate([(1, 0, 3, 2), (2, 3, 0, 1)], 4),
                  ((1, 0, 3, 2), (2, 3, 0, 1)))
    assert is_normal(v4, s4)
    assert not quotient_is_cyclic(s4, v4)          # S4 / V4 = S3
    stab = point_stabilizer(a4, 0)
    assert stab.order == 3
    assert cycle_notation((1, 2, 0, 3)) == "(1 2 3)"
