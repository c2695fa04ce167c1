import random

import pytest

from permrat.errors import BudgetExceeded
from permrat.field import GF, is_square
from permrat.classify import (ClassificationResult, classify,
                              count_classes_exceptional, count_total,
                              count_total_assembled, count_total_bruteforce,
                              equivalence_witness, quartic_canonical, search,
                              search_normal_form, stabilizer, stabilizer_size,
                              _quartic_branch_witnesses)
from permrat.families import quartic_exceptional, quartic_parameters, table1
from permrat.permtest import is_permutation
from permrat.polys import Poly
from permrat.ratfunc import Moebius, RatFunc, all_moebius, compose
from permrat.textforms import ratfunc_from_text, ratfunc_to_text


def rf(q, text):
    return ratfunc_from_text(GF(q), text)


def witness_ok(res: ClassificationResult, f) -> bool:
    mu, nu = res.witness
    return compose(mu.as_ratfunc(),
                   compose(res.representative, nu.as_ratfunc())) == f


def test_classify_non_permutation():
    # cubes collide in GF(4) since gcd(3, 3) = 3
    assert classify(rf(4, "x^3")) is None
    assert classify(rf(3, "x^2")) is None


def test_classify_degrees_1_and_2():
    res = classify(rf(5, "(2*x+1)/(x+4)"))
    assert res.family.kind == "linear" and res.exceptional
    assert witness_ok(res, rf(5, "(2*x+1)/(x+4)"))
    f = rf(4, "(x^2+w)/(x^2+1)")
    res = classify(f)
    assert res is not None and res.family.kind == "power"
    assert witness_ok(res, f)


def test_classify_additive_cubic():
    F9 = GF(9)
    ns = next(e for e in F9.elements() if e.val != F9.zero_raw and not is_square(e))
    f = RatFunc.from_poly(Poly(F9, [0, (-ns).val, 0, F9.one_raw]))
    res = classify(f)
    assert res.family.kind == "additive" and res.exceptional
    alpha = -res.family.params[0]
    assert alpha.val == F9.zero_raw or not is_square(alpha)
    assert witness_ok(res, f)


def test_classify_quartics():
    res = classify(rf(7, "x^4+3*x"))
    assert res.family.kind == "table1" and not res.exceptional
    F5 = GF(5)
    res = classify(quartic_exceptional(F5(2), F5(1)))
    assert res.family.kind == "quartic" and res.exceptional
    assert witness_ok(res, quartic_exceptional(F5(2), F5(1)))
    res = classify(rf(2, "x^4+x^2+x"))
    assert res.family.kind == "additive"
    with pytest.raises(ValueError):
        classify(rf(2, "x^5"))


def test_equivalence_witness_identity_pair():
    f = rf(7, "x^4+3*x")
    mu, nu = equivalence_witness(f, f)
    assert mu == Moebius.identity(GF(7)) and nu == Moebius.identity(GF(7))


def test_equivalence_witness_quartics():
    F5 = GF(5)
    f = quartic_exceptional(F5(1), F5(1))
    g = quartic_exceptional(F5(1), F5(4))
    w = equivalence_witness(f, g)
    assert w is not None
    mu, nu = w
    assert compose(mu.as_ratfunc(), compose(f, nu.as_ratfunc())) == g
    # inequivalent: the table row vs the exceptional family over GF(7)
    F7 = GF(7)
    assert equivalence_witness(rf(7, "x^4+3*x"),
                               quartic_exceptional(F7(1), F7(1))) is None


@pytest.mark.parametrize("q", [5, 7, 9])
def test_exactly_three_branch_alignments(q):
    F = GF(q)
    params = quartic_parameters(F)
    f1 = quartic_exceptional(*params[0])
    f2 = quartic_exceptional(*params[-1])
    pairs = _quartic_branch_witnesses(f1, f2)
    assert pairs is not None and len(pairs) == 3
    for mu, nu in pairs:
        assert compose(mu.as_ratfunc(), compose(f1, nu.as_ratfunc())) == f2


def test_branch_alignment_agrees_with_generic_sweep():
    # the fast path and the full PGL2 sweep must reach the same verdicts
    from permrat.classify import _generic_witness
    rng = random.Random(77)
    for q in (5, 7):
        F = GF(q)
        mats = list(all_moebius(F))
        params = quartic_parameters(F)
        rep = quartic_exceptional(*params[0])
        mu, nu = rng.choice(mats), rng.choice(mats)
        moved = compose(mu.as_ratfunc(), compose(rep, nu.as_ratfunc()))
        fast = _quartic_branch_witnesses(rep, moved)
        slow = _generic_witness(rep, moved, 10 ** 6)
        assert fast and slow is not None
        for tab in table1(q):
            fast = _quartic_branch_witnesses(tab, rep)
            slow = _generic_witness(tab, rep, 10 ** 6)
            assert slow is None
            assert fast is None or fast == []


def test_equivalence_preserves_permutation_property():
    rng = random.Random(200)
    checked = 0
    while checked < 200:
        q = rng.choice((3, 4, 5))
        F = GF(q)
        mats = list(all_moebius(F))
        num = Poly(F, [rng.randrange(q) for _ in range(5)])
        den = Poly(F, [rng.randrange(q) for _ in range(4)])
        if num.is_zero() or den.is_zero():
            continue
        f = RatFunc(num, den)
        if f.is_constant() or not is_permutation(f, 1):
            continue
        mu, nu = rng.choice(mats), rng.choice(mats)
        g = compose(mu.as_ratfunc(), compose(f, nu.as_ratfunc()))
        assert is_permutation(g, 1)
        checked += 1


def test_stabilizer_examples():
    assert stabilizer(rf(7, "x^4+3*x")).size == 3
    assert stabilizer(rf(4, "x^4")).size == 60
    assert stabilizer(rf(2, "x^4+x^2+x")).size == 2


def test_stabilizer_is_group():
    rep = stabilizer(rf(5, "(x^4+x^3+1)/(x^2+2)"))
    assert rep.size == 3
    pairs = {(m.mat, n.mat) for m, n in rep.pairs}
    for m1, n1 in rep.pairs:
        for m2, n2 in rep.pairs:
            assert ((m1 @ m2).mat, (n2 @ n1).mat) in pairs


def test_search_q7():
    classes = search(4, 7)
    assert len(classes) == 2
    exc = [c for c in classes if c.exceptional]
    non = [c for c in classes if not c.exceptional]
    assert len(exc) == 1 and len(non) == 1
    assert equivalence_witness(non[0].representative, rf(7, "x^4+3*x")) is not None
    assert exc[0].stabilizer_size == 3 and non[0].stabilizer_size == 3


def test_search_q11_single_class():
    classes = search(4, 11)
    assert len(classes) == 1 and classes[0].exceptional


@pytest.mark.parametrize("q", [9, 11, 13])
def test_single_exceptional_quartic_class_odd_q(q):
    # any two exceptional quartics found are equivalent
    classes = search(4, q)
    exc = [c for c in classes if c.exceptional]
    assert len(exc) == 1
    rep = exc[0].representative
    F = GF(q)
    other = quartic_exceptional(*quartic_parameters(F)[-1])
    assert equivalence_witness(rep, other) is not None


def test_search_degree3_q8():
    classes = search(3, 8)
    assert len(classes) == 1
    assert classes[0].family.kind == "power"     # gcd(3, 7) = 1, X^3 permutes


def test_search_budget_gate():
    with pytest.raises(BudgetExceeded):
        search(4, 29)
    with pytest.raises(BudgetExceeded):
        search(4, 83, extended=True)


def test_search_deterministic():
    a = search(4, 5)
    b = search(4, 5)
    assert [ratfunc_to_text(c.representative) for c in a] == \
        [ratfunc_to_text(c.representative) for c in b]


def test_count_classes_exceptional():
    assert count_classes_exceptional(2)[0] == 2
    assert count_classes_exceptional(4)[0] == 4
    assert count_classes_exceptional(9)[0] == 1
    n, reps = count_classes_exceptional(8)
    assert n == 4 and len(reps) == 4
    assert ratfunc_to_text(reps[0]) == "x^4"


def test_count_total_examples():
    assert count_total(2) == 78
    assert count_total(5) == 24000
    assert count_total(9) == (9 ** 3 - 9) ** 2 // 3 == 172800
    assert count_total(16) == 16 * 15 * 18 * (16 ** 3 + 1) // 3


def test_counts_cross_check_q3():
    assert count_total(3) == count_total_assembled(3) == count_total_bruteforce(3)


def test_search_normal_form_lands_in_enumerated_set():
    from permrat.families import table1_entries
    rng = random.Random(4242)
    for q in (3, 4, 5, 7):
        F = GF(q)
        mats = list(all_moebius(F))
        base = [e.func for e in table1_entries(q)]
        if q % 2:
            base.append(quartic_canonical(F)[0])
        else:
            base.append(rf(q, "x^4"))
        for _ in range(6):
            f = rng.choice(base)
            mu, nu = rng.choice(mats), rng.choice(mats)
            g = compose(mu.as_ratfunc(), compose(f, nu.as_ratfunc()))
            fhat, wmu, wnu = search_normal_form(g)
            assert compose(wmu.as_ratfunc(),
                           compose(g, wnu.as_ratfunc())) == fhat


def test_classify_every_table_entry():
    from permrat.families import table1_entries
    for q in (2, 3, 4, 5, 7, 8):
        for e in table1_entries(q):
            res = classify(e.func)
            assert res is not None and res.family.kind == "table1"
            assert not res.exceptional
            assert witness_ok(res, e.func)


def test_classify_consistent_with_search_q5():
    for c in search(4, 5):
        res = classify(c.representative)
        assert res is not None
        assert res.exceptional == c.exceptional
        assert witness_ok(res, c.representative)


def test_stabilizer_size_fast_paths_agree():
    F8 = GF(8)
    x4 = rf(8, "x^4")
    assert stabilizer_size(x4) == stabilizer(x4).size == 504
