import pytest

from permrat.field import (GF, FieldElement, descend, embed, field_from_text,
                           field_to_text, frobenius, is_square, lies_in, trace)
from permrat.polys import Poly, find_irreducible, minimal_polynomial
from permrat.textforms import element_from_text, element_to_text


def brute_irreducible_cubics_f5():
    """Oracle: all 125 monic cubics over GF(5) in lex order, keeping those
    with no root and no irreducible-quadratic factor (i.e. no factor at all)."""
    F = GF(5)
    out = []
    for c0 in range(5):
        for c1 in range(5):
            for c2 in range(5):
                f = Poly(F, [c0, c1, c2, 1])
                if any(f.evaluate(F(r)).val == 0 for r in range(5)):
                    continue
                # no linear factor; a reducible cubic would have one
                out.append(f)
    return out


def test_find_irreducible_f2():
    F2 = GF(2)
    assert find_irreducible(F2, 2) == Poly(F2, [1, 1, 1])   # X^2+X+1
    assert find_irreducible(F2, 1) == Poly(F2, [0, 1])      # X


def test_find_irreducible_f5_matches_lex_oracle():
    F5 = GF(5)
    assert find_irreducible(F5, 3) == brute_irreducible_cubics_f5()[0]


def test_find_irreducible_deterministic():
    a = find_irreducible(GF(3), 4)
    b = find_irreducible(GF(3), 4)
    assert a == b and a.coeffs == b.coeffs


def test_frobenius_f4():
    F2, F4 = GF(2), GF(4)
    w = F4.gen()
    assert w * w == w + 1
    assert frobenius(w, 1, F2) == w + 1
    assert frobenius(w, 0, F2) == w


def test_frobenius_cubic_orbit_closes_by_repeated_multiplication():
    F5 = GF(5)
    E = F5.extension(3)
    g = E.gen()
    # oracle: gamma^125 by plain repeated multiplication
    acc = E(1)
    for _ in range(125):
        acc = acc * g
    assert acc == frobenius(g, 3, F5) == g


def test_trace_examples():
    F2, F4 = GF(2), GF(4)
    w = F4.gen()
    assert trace(w, F2) == F2(1)
    e = embed(F2(1), F4)
    assert trace(e, F2) == F2(0)          # 2 * 1 = 0 in characteristic 2
    F5 = GF(5)
    g = F5.extension(3, "x^3+x+1").gen()  # gamma with gamma^3 + gamma + 1 = 0
    mp = minimal_polynomial(g, F5)
    assert mp == Poly(F5, [1, 1, 0, 1])
    # trace equals minus the X^2 coefficient of the minimal polynomial
    assert trace(g, F5) == -mp[2] == F5(0)
    total = g + frobenius(g, 1, F5) + frobenius(g, 2, F5)
    assert descend(total, F5) == trace(g, F5)


def test_trace_linear_and_surjective():
    # exhaustive additivity and homogeneity for towers with top <= 729
    for base_q, ext in ((3, 2), (3, 3), (9, 3), (8, 2), (4, 3)):
        F = GF(base_q)
        E = F.extension(ext)
        vals = list(E.elements_raw())
        table = {v: trace(FieldElement(E, v), F).val for v in vals}
        add = E.add_raw
        for a in vals:
            ta = table[a]
            for b in vals:
                assert table[add(a, b)] == F.add_raw(ta, table[b])
        for c in F.elements():
            ce = embed(c, E)
            for a in vals:
                assert table[(ce * FieldElement(E, a)).val] == \
                    F.mul_raw(c.val, table[a])
        assert len(set(table.values())) == base_q     # onto the base field


def test_is_square():
    F5 = GF(5)
    squares = {(F5(x) * F5(x)).val for x in range(5)}
    assert squares == {0, 1, 4}
    assert not is_square(F5(2))
    assert is_square(F5(0)) and is_square(F5(4))
    for e in GF(8).elements():
        assert is_square(e)


def test_embed_homomorphism_and_minpoly():
    F3, F9 = GF(3), GF(9)
    assert embed(F3(1), F9) == F9(1)
    F4 = GF(4)
    F16 = F4.extension(2)
    for a in F4.elements():
        for b in F4.elements():
            assert embed(a + b, F16) == embed(a, F16) + embed(b, F16)
            assert embed(a * b, F16) == embed(a, F16) * embed(b, F16)
    F5 = GF(5)
    e = embed(F5(2), F5.extension(3))
    assert minimal_polynomial(e, F5) == Poly(F5, [-F5(2).val, 1])


def test_embed_rejects_unrelated_fields():
    with pytest.raises(ValueError):
        embed(GF(4).gen(), GF(8))


def test_frobenius_fixes_exactly_base():
    for q, m in ((2, 2), (2, 3), (3, 2), (4, 2), (5, 2), (2, 6), (8, 2)):
        F = GF(q)
        E = F.extension(m)
        fixed = {v for v in E.elements_raw()
                 if frobenius(FieldElement(E, v), 1, F).val == v}
        assert fixed == {embed(e, E).val for e in F.elements()}


def test_field_axioms_small():
    for q in (4, 9, 8):
        F = GF(q)
        elems = list(F.elements())
        for a in elems:
            for b in elems:
                assert a + b == b + a
                assert a * b == b * a
                if b.val != F.zero_raw:
                    assert (a * b) / b == a
        one = F(1)
        for a in elems[1:]:
            assert a * a.inverse() == one


def test_element_order_is_lex_on_coefficient_vectors():
    F9 = GF(9)
    ranks = [e.rank for e in F9.elements()]
    assert ranks == list(range(9))
    w = F9.gen()
    assert w.rank == 1            # (0, 1) follows (0, 0)
    assert F9(1).rank == 3        # (1, 0) comes after all (0, *)


def test_element_text_roundtrip():
    for F in (GF(27), GF(4).extension(2), GF(49)):
        for e in F.elements():
            assert element_from_text(F, element_to_text(e)) == e


def test_tower_symbols():
    T = GF(4).extension(3)
    g2 = T.gen()
    assert element_to_text(g2) == "w2"
    w1 = embed(GF(4).gen(), T)
    assert element_from_text(T, "w1") == w1
    assert element_from_text(T, "w2^2 + w1*w2 + 1") == g2 * g2 + w1 * g2 + 1


def test_field_text_roundtrip():
    for text in ("GF(7)", "GF(3^2)", "GF(2^4)"):
        F = field_from_text(text)
        assert field_to_text(F) == text
    default = field_from_text("GF(3^2) mod x^2+1")
    assert field_to_text(default) == "GF(3^2)"        # x^2+1 is the lex default
    assert default.gen() * default.gen() == default(-1)
    F = field_from_text("GF(3^2) mod x^2+x+2")
    assert field_to_text(F) == "GF(3^2) mod x^2+x+2"
    assert field_from_text(field_to_text(F)) is F


def test_tower_cardinality_composes():
    F = GF(3)
    E = F.extension(2)
    T = E.extension(3)
    assert T.order == 3 ** 6
    assert lies_in(embed(E.gen(), T), E)
