import itertools

import pytest

from permrat.field import GF, embed
from permrat.families import (difference_factorization_check, is_additive,
                              quartic_exceptional, quartic_parameters,
                              quartic_symmetries, redei, redei_canonical,
                              roots_form_group, subtraction_closure_identity,
                              table1, table1_entries, _cubic_roots_ordered)
from permrat.permtest import is_permutation
from permrat.polys import Poly, factor, poly_gcd
from permrat.ratfunc import Moebius, RatFunc, compose
from permrat.textforms import poly_from_text, ratfunc_to_text


def test_redei_examples():
    f7 = redei_canonical(3, GF(7))
    assert f7.degree == 3 and f7.field is GF(7)
    assert is_permutation(f7, 1)            # gcd(3, 8) = 1
    f5 = redei_canonical(3, GF(5))
    assert not is_permutation(f5, 1)        # gcd(3, 6) = 3
    m = redei_canonical(1, GF(7))
    assert m.degree == 1
    Moebius.from_ratfunc(m)                 # degree one means a Moebius map


def test_redei_rejects_rational_delta():
    F7 = GF(7)
    E = F7.extension(2)
    with pytest.raises(ValueError):
        redei(3, embed(F7(3), E))


def test_redei_single_equivalence_class():
    # every choice of delta outside F_q gives the same class; checked
    # exhaustively at (n, q) = (3, 5) and (3, 7)
    from permrat.classify import equivalence_witness
    for q in (5, 7):
        F = GF(q)
        E = F.extension(2)
        base = redei_canonical(3, F)
        for delta in E.elements():
            if any(delta == embed(c, E) for c in F.elements()):
                continue
            w = equivalence_witness(redei(3, delta), base)
            assert w is not None


def test_redei_composition_multiplicativity():
    for q in (5, 7):
        F = GF(q)
        delta = F.extension(2).gen()
        for m, n in itertools.product((2, 3), repeat=2):
            lhs = compose(redei(m, delta), redei(n, delta))
            assert lhs == redei(m * n, delta)


def test_quartic_exceptional_examples():
    F5 = GF(5)
    f = quartic_exceptional(F5(1), F5(1))
    assert is_permutation(f, 1)             # all 6 points of P^1(F_5)
    F3 = GF(3)
    g = quartic_exceptional(F3(-1), F3(1))  # X^3 - X + 1 irreducible over GF(3)
    assert g.degree == 4
    with pytest.raises(ValueError):
        quartic_exceptional(F3(0), F3(0))   # X^3 reducible
    with pytest.raises(ValueError):
        quartic_exceptional(GF(4)(1), GF(4)(1))   # even characteristic


def test_is_additive():
    F2 = GF(2)
    assert is_additive(poly_from_text(F2, "x^4+x^2+x"))
    assert not is_additive(poly_from_text(F2, "x^4+x^3+x"))
    F9 = GF(9)
    from permrat.field import is_square
    ns = next(e for e in F9.elements() if e.val != F9.zero_raw and not is_square(e))
    assert is_additive(Poly(F9, [0, (-ns).val, 0, F9.one_raw]))
    assert not is_additive(Poly(F9, [1, 1]))     # constant term


def test_roots_form_group_examples():
    F2 = GF(2)
    assert roots_form_group(poly_from_text(F2, "x^2+x"), 1)      # roots {0,1}
    assert not roots_form_group(poly_from_text(F2, "x^2+x+1"), 2)  # 0 missing
    with pytest.raises(ValueError):
        roots_form_group(poly_from_text(F2, "x^2"), 1)           # not squarefree
    with pytest.raises(ValueError):
        roots_form_group(poly_from_text(F2, "x^2+x+1"), 1)       # does not split


def test_all_squarefree_additive_roots_form_groups():
    from math import lcm
    for q in (2, 3):
        F = GF(q)
        p = F.p
        exps = [p ** i for i in range(4) if p ** i <= 8]
        for coeffs in itertools.product(F.elements_raw(), repeat=len(exps)):
            vals = [F.zero_raw] * 9
            for c, e in zip(coeffs, exps):
                vals[e] = c
            L = Poly(F, vals)
            if L.degree < 1:
                continue
            d = L.derivative()
            if d.is_zero() or poly_gcd(L, d).degree != 0:
                continue
            m = lcm(*(h.degree for h, _ in factor(L)))
            assert roots_form_group(L, m)
            assert subtraction_closure_identity(L)


def test_closure_identity_matches_root_group_on_non_additive_samples():
    from math import lcm
    F = GF(3)
    tested = 0
    for c in itertools.product(range(3), repeat=4):
        L = Poly(F, list(c) + [1])
        d = L.derivative()
        if d.is_zero() or poly_gcd(L, d).degree != 0 or is_additive(L):
            continue
        m = lcm(*(h.degree for h, _ in factor(L)))
        if m > 6:
            continue
        assert roots_form_group(L, m) == subtraction_closure_identity(L) == False
        tested += 1
        if tested >= 12:
            break
    assert tested >= 5


def test_table1_rows():
    assert [ratfunc_to_text(f) for f in table1(7)] == ["x^4+3*x"]
    assert [ratfunc_to_text(f) for f in table1(2)] == \
        ["x^4+x^3+x", "(x^4+x^3+x)/(x^2+x+1)"]
    for f in table1(5):
        assert ratfunc_to_text(f).endswith("/(x^2+2)")
    assert len(table1(8)) == 3              # three roots of a^3 + a = 1
    assert len(table1(4)) == 6              # three rows, two omegas each
    with pytest.raises(ValueError):
        table1(9)


def test_table1_entries_permute():
    for q in (2, 3, 4, 5, 7, 8):
        for e in table1_entries(q):
            assert e.func.degree == 4
            assert is_permutation(e.func, 1)


def test_quartic_symmetries_examples():
    F5 = GF(5)
    mu, nu = quartic_symmetries(F5(1), F5(1))
    f = quartic_exceptional(F5(1), F5(1))
    assert compose(mu.as_ratfunc(), compose(f, nu.as_ratfunc())) == f
    F3 = GF(3)
    for a, b in quartic_parameters(F3):
        mu, nu = quartic_symmetries(a, b)
        g = quartic_exceptional(a, b)
        assert compose(mu.as_ratfunc(), compose(g, nu.as_ratfunc())) == g


def test_quartic_symmetries_shift_branch_orbit():
    F5 = GF(5)
    mu, _nu = quartic_symmetries(F5(1), F5(1))
    g1, g2, g3 = _cubic_roots_ordered(F5(1), F5(1))
    E = g1.field
    muE = mu.embed_into(E)
    assert muE(4 * g1) == 4 * g2
    assert muE(4 * g2) == 4 * g3            # the orbit is cycled


def test_quartic_symmetry_pairs_generate_order_three():
    F5 = GF(5)
    mu, nu = quartic_symmetries(F5(1), F5(1))
    ident = Moebius.identity(F5)
    assert (mu @ mu @ mu) == ident and (nu @ nu @ nu) == ident
    f = quartic_exceptional(F5(1), F5(1))
    pair2 = (mu @ mu, nu @ nu)
    assert compose(pair2[0].as_ratfunc(), compose(f, pair2[1].as_ratfunc())) == f


def test_difference_factorization():
    F5, F3 = GF(5), GF(3)
    assert difference_factorization_check(F5(1), F5(1))
    assert difference_factorization_check(F3(-1), F3(1))
    F7 = GF(7)
    for a, b in quartic_parameters(F7):
        assert difference_factorization_check(a, b)


def test_constructed_family_members_are_exceptional():
    from permrat.permtest import Exceptional, decide_exceptional
    F7 = GF(7)
    cases = [RatFunc.from_poly(Poly.monomial(GF(5), 1, 3)),     # gcd(3,4)=1
             redei_canonical(3, F7),
             RatFunc.from_poly(poly_from_text(GF(2), "x^4+x^2+x")),
             quartic_exceptional(F7(1), F7(1))]
    for f in cases:
        assert isinstance(decide_exceptional(f), Exceptional)
