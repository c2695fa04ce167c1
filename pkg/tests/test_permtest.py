from math import gcd

import pytest

from permrat.errors import BudgetExceeded
from permrat.field import GF, FieldElement
from permrat.permtest import (Exceptional, NotExceptional,
                              decide_exceptional, exceptionality_bound,
                              is_exceptional_additive, is_permutation)
from permrat.polys import Poly
from permrat.ratfunc import RatFunc
from permrat.textforms import poly_from_text, ratfunc_from_text


def rf(q, text):
    return ratfunc_from_text(GF(q), text)


def test_is_permutation_examples():
    assert is_permutation(rf(5, "x^3"), 1)          # gcd(3, 4) = 1
    assert not is_permutation(rf(3, "x^2"), 1)      # 1 = (-1)^2
    f = rf(7, "x^4+3*x")
    assert is_permutation(f, 1)
    assert not is_permutation(f, 2)                 # fails over GF(49)


def test_is_permutation_budget():
    with pytest.raises(BudgetExceeded):
        is_permutation(rf(2, "x^3+x"), 40)


def test_redei_permutation_levels_match_gcd_criterion():
    # Over F_{q^l} the special points stay quadratic only for odd l; for
    # even l they become rational and the map behaves as a power map, so
    # the closed permutation criterion is gcd(n, q^l - (-1)^l) = 1.  At
    # l = 1 this is the ground-field criterion gcd(n, q+1) = 1.
    from permrat.families import redei_canonical
    for q, levels in ((5, (1, 2, 3, 4)), (7, (1, 2, 3))):
        f = redei_canonical(3, GF(q))
        for level in levels:
            want = gcd(3, q ** level - (-1) ** level) == 1
            assert is_permutation(f, level) == want


def test_additive_permutation_levels_match_root_criterion():
    for q, text in ((2, "x^4+x^2+x"), (3, "x^3+2*x"), (4, "x^4+x^2+x")):
        F = GF(q)
        L = poly_from_text(F, text)
        f = RatFunc.from_poly(L)
        for level in (1, 2, 3, 4):
            E = F if level == 1 else F.extension(level)
            has_root = any(
                L.evaluate(FieldElement(E, v)).val == E.zero_raw
                for v in E.elements_raw() if v != E.zero_raw)
            assert is_permutation(f, level) == (not has_root)


def test_exceptionality_bound():
    assert exceptionality_bound(3) == 10
    assert exceptionality_bound(4) == 82
    assert exceptionality_bound(8) == 73 ** 2 + 1 == 5330
    with pytest.raises(ValueError):
        exceptionality_bound(1)


def test_decide_exceptional_examples():
    v = decide_exceptional(rf(2, "x^2"))
    assert isinstance(v, Exceptional)
    v = decide_exceptional(rf(7, "x^4+3*x"))
    assert isinstance(v, NotExceptional)
    # X^3 + X + 1 has no roots in GF(5), so the quartic family applies
    F5 = GF(5)
    cubic = poly_from_text(F5, "x^3+x+1")
    assert all(cubic.evaluate(F5(r)).val != 0 for r in range(5))
    from permrat.families import quartic_exceptional
    v = decide_exceptional(quartic_exceptional(F5(1), F5(1)))
    assert isinstance(v, Exceptional)


def test_certificates_reverify():
    from permrat.families import quartic_exceptional, redei_canonical
    from permrat.ratfunc import inseparable_reduction
    F5 = GF(5)
    cases = [rf(2, "x^2"), rf(5, "x^3"), redei_canonical(3, GF(7)),
             quartic_exceptional(F5(1), F5(1)), rf(2, "x^4")]
    for f in cases:
        v = decide_exceptional(f)
        assert isinstance(v, Exceptional)
        q = f.field.order
        assert is_permutation(f, v.level)
        n = max(2, inseparable_reduction(f)[0].degree)
        assert q ** v.level > (2 * (n - 2) ** 2 + 1) ** 2


def test_not_exceptional_reasons():
    v = decide_exceptional(rf(3, "x^2"))
    assert isinstance(v, NotExceptional) and v.reason == 1
    v = decide_exceptional(rf(7, "x^4+3*x"))
    assert isinstance(v, NotExceptional)
    assert getattr(v.reason, "kind", None) == "table1"


def test_inseparable_input_reduces():
    v = decide_exceptional(rf(2, "x^4"))
    assert isinstance(v, Exceptional)
    v = decide_exceptional(rf(3, "x^9"))
    assert isinstance(v, Exceptional)


def test_degree_five_undetermined_design():
    # an exceptional degree-5 additive polynomial: YES needs no classification
    f = rf(2, "x^5")         # not additive; x^5 over GF(2): check a power map
    # x^5 permutes GF(2^l) iff gcd(5, 2^l - 1) = 1, which holds for l not
    # divisible by 4, so the window certifies it quickly
    v = decide_exceptional(f)
    assert isinstance(v, Exceptional)


def test_is_exceptional_additive():
    F2 = GF(2)
    assert is_exceptional_additive(poly_from_text(F2, "x^4+x^2+x"))
    for q in (2, 3, 4, 5):
        F = GF(q)
        L = Poly.monomial(F, 1, F.p) - Poly.x(F)       # X^p - X has root 1
        assert not is_exceptional_additive(L)
    F9 = GF(9)
    from permrat.field import is_square
    ns = next(e for e in F9.elements() if e.val != F9.zero_raw and not is_square(e))
    L = Poly(F9, [0, (-ns).val, 0, F9.one_raw])        # X^3 - ns*X
    assert is_exceptional_additive(L)
    with pytest.raises(ValueError):
        is_exceptional_additive(poly_from_text(F2, "x^3+x"))


def test_additive_agreement_with_permutation_check():
    import itertools
    F = GF(4)
    for coeffs in itertools.product(F.elements_raw(), repeat=3):
        vals = [F.zero_raw] * 5
        for c, e in zip(coeffs, (1, 2, 4)):
            vals[e] = c
        L = Poly(F, vals)
        if L.degree < 1:
            continue
        assert is_exceptional_additive(L) == \
            is_permutation(RatFunc.from_poly(L), 1)
