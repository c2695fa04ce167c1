import random

import pytest

from permrat.field import GF, FieldElement, frobenius
from permrat.polys import Poly
from permrat.ratfunc import (INFINITY, BivarPoly, Moebius, RatFunc,
                             all_moebius, branch_points, coeff_frobenius,
                             compose, derivative, difference_numerator,
                             evaluate, inseparable_reduction, is_left_component,
                             is_separable, left_component_witness,
                             moebius_from_triple, moebius_inverse, normalize,
                             p1_points, point_rank, preimage_count, symmetries)
from permrat.textforms import ratfunc_from_text, ratfunc_to_text


def rf(q, text):
    return ratfunc_from_text(GF(q), text)


def test_normalize_examples():
    F2 = GF(2)
    f = normalize(Poly(F2, [0, 1, 1]), Poly(F2, [0, 1]))    # (X^2+X)/X
    assert ratfunc_to_text(f) == "x+1"
    F5 = GF(5)
    g = normalize(Poly(F5, [0, 2]), Poly(F5, [2]))          # 2X/2
    assert ratfunc_to_text(g) == "x"
    t = rf(7, "x^4+3*x")
    assert normalize(t.num, t.den) == t


def test_normalize_idempotent_random():
    rng = random.Random(11)
    F = GF(9)
    for _ in range(40):
        num = Poly(F, [rng.randrange(9) for _ in range(5)])
        den = Poly(F, [rng.randrange(9) for _ in range(4)])
        if den.is_zero():
            continue
        f = RatFunc(num, den)
        again = normalize(f.num, f.den)
        assert again == f


def test_evaluate_examples():
    assert evaluate(rf(3, "1/x"), GF(3)(0)) is INFINITY
    f = rf(5, "x^2 + 1/(x^2)")
    assert evaluate(f, INFINITY) is INFINITY
    g = rf(7, "x^4+3*x")
    images = {point_rank(evaluate(g, x), GF(7)) for x in p1_points(GF(7))}
    assert images == set(range(8))          # a bijection of the 8 points


def test_evaluate_degree_tie_and_drop():
    f = rf(5, "(2*x^2+1)/(x^2+x)")
    assert evaluate(f, INFINITY) == GF(5)(2)
    g = rf(5, "x/(x^2+2)")
    assert evaluate(g, INFINITY) == GF(5)(0)


def test_derivative():
    assert derivative(rf(3, "x^3")).num.is_zero()
    d = derivative(rf(5, "x + 1/x"))
    assert d == rf(5, "(x^2 - 1)/(x^2)")


def test_separability_matches_xp_membership():
    rng = random.Random(5)
    F = GF(9)
    for _ in range(60):
        num = Poly(F, [rng.randrange(9) for _ in range(5)])
        den = Poly(F, [rng.randrange(9) for _ in range(3)])
        if den.is_zero() or num.is_zero():
            continue
        f = RatFunc(num, den)
        if f.is_constant():
            continue
        in_xp = all(c == F.zero_raw for i, c in enumerate(f.num.coeffs) if i % 3) \
            and all(c == F.zero_raw for i, c in enumerate(f.den.coeffs) if i % 3)
        assert is_separable(f) == (not in_xp)


def test_compose_examples():
    F2 = GF(2)
    assert compose(rf(2, "x^2"), rf(2, "x^2")) == rf(2, "x^4")
    rng = random.Random(99)
    F9 = GF(9)
    mats = list(all_moebius(F9))
    for _ in range(20):
        mu = rng.choice(mats)
        assert compose(mu.as_ratfunc(), mu.inverse().as_ratfunc()) == RatFunc.x(F9)


def test_compose_degree_multiplicative():
    rng = random.Random(2024)
    F = GF(9)
    done = 0
    while done < 100:
        gnum = Poly(F, [rng.randrange(9) for _ in range(rng.randrange(2, 6))])
        gden = Poly(F, [rng.randrange(9) for _ in range(rng.randrange(1, 5))])
        hnum = Poly(F, [rng.randrange(9) for _ in range(rng.randrange(2, 6))])
        hden = Poly(F, [rng.randrange(9) for _ in range(rng.randrange(1, 5))])
        if gden.is_zero() or hden.is_zero():
            continue
        g = RatFunc(gnum, gden)
        h = RatFunc(hnum, hden)
        if g.is_constant() or h.is_constant() or g.degree > 4 or h.degree > 4:
            continue
        done += 1
        assert compose(g, h).degree == g.degree * h.degree


def test_compose_commutes_with_evaluation():
    rng = random.Random(31)
    for q in (4, 5, 7, 9):
        F = GF(q)
        pts = p1_points(F)
        for _ in range(25):
            g = RatFunc(Poly(F, [rng.randrange(q) for _ in range(5)]),
                        Poly(F, [rng.randrange(q) for _ in range(3)] + [1]))
            h = RatFunc(Poly(F, [rng.randrange(q) for _ in range(5)]),
                        Poly(F, [rng.randrange(q) for _ in range(3)] + [1]))
            if g.is_constant() or h.is_constant():
                continue
            gh = compose(g, h)
            for x in pts:
                assert point_rank(evaluate(gh, x), F) == \
                    point_rank(evaluate(g, evaluate(h, x)), F)


def test_moebius_inverse():
    F3 = GF(3)
    m = Moebius(F3, 1, 1, 0, 1)           # X + 1
    assert m.inverse() == Moebius(F3, 1, -1, 0, 1)
    inv = Moebius(F3, 0, 1, 1, 0)         # 1/X
    assert inv.inverse() == inv
    F5 = GF(5)
    for mu in all_moebius(F5):
        a, b, c, d = mu.mat
        explicit = Moebius(F5, d, F5.neg_raw(b), F5.neg_raw(c), a)
        assert moebius_inverse(mu) == explicit
        assert mu @ explicit == Moebius.identity(F5)


def test_moebius_from_triple():
    F3 = GF(3)
    pts = p1_points(F3)
    ident = moebius_from_triple(tuple(pts[:3]), tuple(pts[:3]))
    assert ident == Moebius.identity(F3)
    mu = moebius_from_triple((F3(0), F3(1), INFINITY), (INFINITY, F3(1), F3(0)))
    assert mu.as_ratfunc() == rf(3, "1/x")
    with pytest.raises(ValueError):
        moebius_from_triple((F3(0), F3(0), INFINITY), (F3(1), F3(2), INFINITY))


def test_moebius_from_triple_unique_exhaustive_f4():
    F4 = GF(4)
    mats = list(all_moebius(F4))
    assert len(mats) == 60
    pts = p1_points(F4)
    src = (pts[0], pts[1], pts[4])
    dst = (pts[2], pts[4], pts[1])
    mu = moebius_from_triple(src, dst)
    matching = [m for m in mats
                if all(point_rank(m(s), F4) == point_rank(d, F4)
                       for s, d in zip(src, dst))]
    assert matching == [mu]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_moebius_count(q):
    assert sum(1 for _ in all_moebius(GF(q))) == q ** 3 - q


def test_coeff_frobenius():
    F5 = GF(5)
    f = rf(5, "x^3+2*x")
    assert coeff_frobenius(f, F5) == f
    E = F5.extension(2)
    d = E.gen()
    dq = frobenius(d, 1, F5)
    x = RatFunc.x(E)
    nu = (x - RatFunc.constant(E, dq)) / (x - RatFunc.constant(E, d))
    flipped = (x - RatFunc.constant(E, d)) / (x - RatFunc.constant(E, dq))
    assert coeff_frobenius(nu, F5) == flipped
    assert coeff_frobenius(coeff_frobenius(nu, F5), F5) == nu


def test_branch_points_examples():
    F5 = GF(5)
    bp = branch_points(rf(5, "x^2 + 1/(x^2)"))
    labels = {(m, "inf" if pt is INFINITY else pt.rank) for m, pt in bp}
    assert labels == {(1, 2), (1, 3), (1, "inf")}     # {2, -2, inf}
    bp2 = branch_points(rf(7, "x^3"))
    labels2 = {(m, "inf" if pt is INFINITY else pt.rank) for m, pt in bp2}
    assert labels2 == {(1, 0), (1, "inf")}
    with pytest.raises(ValueError):
        branch_points(rf(3, "x^3"))       # inseparable


def test_branch_points_frobenius_stable_random():
    rng = random.Random(808)
    for q in (3, 5, 7):
        F = GF(q)
        done = 0
        while done < 8:
            f = RatFunc(Poly(F, [rng.randrange(q) for _ in range(4)] + [1]),
                        Poly(F, [rng.randrange(q) for _ in range(3)] + [1]))
            if f.degree != 4 or not is_separable(f):
                continue
            done += 1
            bp = branch_points(f)
            have = {(m, "inf" if pt is INFINITY else pt.rank) for m, pt in bp}
            moved = {(m, "inf" if pt is INFINITY else frobenius(pt, 1, F).rank)
                     for m, pt in bp}
            assert have == moved


def test_generic_fiber_is_unramified_for_separable():
    for q, text in ((5, "(x^4+3*x^2+2*x+1)/(x^3+x+1)"), (7, "x^4+3*x"),
                    (4, "(x^4+w*x)/(x^3+w^2)")):
        f = rf(q, text)
        E = GF(q).extension(2)
        n = f.degree
        assert any(preimage_count(f, FieldElement(E, v)) == n
                   for v in E.elements_raw())


def test_difference_numerator():
    F3 = GF(3)
    dn = difference_numerator(rf(3, "x^2"))
    x_minus_y_sq = BivarPoly(F3, [Poly(F3, [0, -1]), Poly(F3, [1])]) * \
        BivarPoly(F3, [Poly(F3, [0, 1]), Poly(F3, [1])])
    assert dn.proportional_to(x_minus_y_sq)       # (X-Y)(X+Y)
    q = dn.divide_by_x_minus_y()
    assert q == BivarPoly(F3, [Poly(F3, [0, 1]), Poly(F3, [1])])


def test_difference_numerator_antisymmetric():
    for q, text in ((5, "(x^4+x+1)/(x^2+2)"), (7, "x^4+3*x"), (9, "x^3+x")):
        dn = difference_numerator(rf(q, text))
        F = GF(q)
        swapped = dn.swap_xy()
        neg = BivarPoly(F, [r.scale(F.neg_raw(F.one_raw)) for r in dn.rows])
        assert swapped == neg


def test_left_component():
    F2 = GF(2)
    x2 = rf(2, "x^2")
    g = left_component_witness(x2, rf(2, "x^4"))
    assert g == x2
    assert left_component_witness(x2, rf(2, "x^4+x^3+x")) is None
    assert not is_left_component(x2, rf(2, "x^4+x^3+x"))
    L = rf(2, "x^4+x^2+x")
    f = compose(L, x2)
    assert left_component_witness(x2, f) == L


def test_left_component_rational_inner():
    F5 = GF(5)
    h = rf(5, "(x^2+1)/x")
    g = rf(5, "(x^2+2*x)/(x+3)")
    f = compose(g, h)
    w = left_component_witness(h, f)
    assert w is not None and compose(w, h) == f


def test_symmetries_power_map():
    s = symmetries(rf(3, "x^2"), 1)
    assert {m.as_ratfunc() for m in s} == {rf(3, "x"), rf(3, "2*x")}


def test_symmetries_cubic_over_quadratic_extension():
    # X^3 over GF(5) is a separable exceptional cubic; its symmetry group
    # over GF(25) is cyclic of order 3 with both nonidentity maps having
    # coefficients outside GF(5)
    F5 = GF(5)
    f = rf(5, "x^3")
    s = symmetries(f, 2)
    assert len(s) == 3
    non_identity = [m for m in s if m != Moebius.identity(F5.extension(2))]
    assert len(non_identity) == 2
    for m in non_identity:
        assert not m.is_over(F5)
        assert m.order() == 3


def test_symmetries_quartic_over_cubic_extension():
    from permrat.families import quartic_exceptional
    F5 = GF(5)
    f = quartic_exceptional(F5(1), F5(1))
    s = symmetries(f, 3)
    E = F5.extension(3)
    assert len(s) == 4
    ident = Moebius.identity(E)
    for m in s:
        assert (m @ m) == ident            # exponent 2
    over_f5 = [m for m in s if m.is_over(F5)]
    assert over_f5 == [ident]


def test_inseparable_reduction():
    f = rf(2, "x^4+x^2")
    g, r = inseparable_reduction(f)
    assert r == 1 and g == rf(2, "x^2+x")
    h, r2 = inseparable_reduction(rf(3, "x^9"))
    assert r2 == 2 and h == rf(3, "x")


def test_text_roundtrip():
    cases = [(7, "x^4+3*x"), (5, "(x^4+x+1)/(x^2+2)"),
             (4, "(x^4+w*x^2+x)/(x^3+x+1)"), (8, "(x^4+w*x^3+x)/(x^2+x+1)"),
             (9, "(2*w*x^3+x)/(x^2+w)")]
    for q, text in cases:
        F = GF(q)
        f = ratfunc_from_text(F, text)
        assert ratfunc_from_text(F, ratfunc_to_text(f)) == f
