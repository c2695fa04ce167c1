"""Command-line frontend: reproducible verification runs with JSON output.

Data records go to stdout as JSON lines (one object per record, sorted
keys, no timestamps), human-readable progress to stderr.  Exit codes:
0 success, 1 failed assertion or verification, 2 argument errors,
3 exceeded budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import BudgetExceeded
from .field import GF, FiniteField, prime_field
from .textforms import (element_from_text, element_to_text, poly_from_text,
                        ratfunc_from_text, ratfunc_to_text)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _info(msg: str) -> None:
    print(msg, file=sys.stderr)


def _field_from_args(args) -> FiniteField:
    if getattr(args, "q", None) is None and getattr(args, "p", None) is None:
        raise ValueError("either --q or --p/--k is required")
    if getattr(args, "q", None) is not None:
        if args.mod is not None:
            p, k = _split_prime_power(args.q)
            base = prime_field(p)
            return base.extension(k, poly_from_text(base, args.mod))
        return GF(args.q)
    base = prime_field(args.p)
    k = args.k or 1
    if k == 1:
        return base
    if args.mod is not None:
        return base.extension(k, poly_from_text(base, args.mod))
    return base.extension(k)


def _split_prime_power(q: int):
    from .field import factor_prime_power
    return factor_prime_power(q)


def _add_field_args(sp) -> None:
    sp.add_argument("--q", type=int, help="field size (prime power)")
    sp.add_argument("--p", type=int, help="characteristic")
    sp.add_argument("--k", type=int, help="extension degree over the prime field")
    sp.add_argument("--mod", type=str,
                    help="explicit modulus polynomial in x over GF(p)")


def _moebius_text(mu) -> str:
    return ratfunc_to_text(mu.as_ratfunc())


def _tag_json(tag):
    if tag is None:
        return None
    return {"kind": tag.kind, "params": [str(p) for p in tag.params]}


def cmd_exceptional(args) -> int:
    from .permtest import (Exceptional, NotExceptional, Undetermined,
                           decide_exceptional)
    F = _field_from_args(args)
    f = ratfunc_from_text(F, args.f)
    verdict = decide_exceptional(f, window=args.window)
    rec = {"function": ratfunc_to_text(f), "field": repr(F)}
    if isinstance(verdict, Exceptional):
        rec["verdict"] = "exceptional"
        rec["certificate_level"] = verdict.level
    elif isinstance(verdict, NotExceptional):
        rec["verdict"] = "not_exceptional"
        rec["reason"] = (verdict.reason if isinstance(verdict.reason, int)
                         else str(verdict.reason))
    else:
        assert isinstance(verdict, Undetermined)
        rec["verdict"] = "undetermined"
        rec["tested_levels"] = list(verdict.tested)
    _emit(rec)
    return EXIT_OK


def cmd_classify(args) -> int:
    from .classify import classify
    F = _field_from_args(args)
    f = ratfunc_from_text(F, args.f)
    res = classify(f)
    if res is None:
        _emit({"function": ratfunc_to_text(f), "field": repr(F),
               "result": "not_a_permutation"})
        return EXIT_OK
    mu, nu = res.witness
    _emit({"function": ratfunc_to_text(f), "field": repr(F),
           "result": "classified",
           "family": _tag_json(res.family),
           "representative": ratfunc_to_text(res.representative),
           "witness_mu": _moebius_text(mu),
           "witness_nu": _moebius_text(nu),
           "exceptional": res.exceptional})
    return EXIT_OK


def cmd_search(args) -> int:
    from .classify import search
    classes = search(args.n, args.q, extended=args.extended)
    for c in classes:
        _emit({"q": args.q, "n": args.n,
               "representative": ratfunc_to_text(c.representative),
               "family": _tag_json(c.family),
               "exceptional": c.exceptional,
               "stabilizer_size": c.stabilizer_size,
               "orbit_size": c.orbit_size,
               "normal_form_members": c.members_found})
    _info(f"search n={args.n} q={args.q}: {len(classes)} classes")
    return EXIT_OK


def cmd_count(args) -> int:
    from .classify import (count_total, count_total_assembled,
                           count_total_bruteforce)
    q = args.q
    formula = count_total(q)
    assembled = count_total_assembled(q, extended=args.extended)
    rec = {"q": q, "formula": formula, "assembled": assembled}
    ok = formula == assembled
    if q <= 8:
        brute = count_total_bruteforce(q)
        rec["bruteforce"] = brute
        ok = ok and brute == formula
    rec["consistent"] = ok
    _emit(rec)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_stabilizer(args) -> int:
    from .classify import stabilizer
    F = _field_from_args(args)
    f = ratfunc_from_text(F, args.f)
    rep = stabilizer(f)
    _emit({"function": ratfunc_to_text(f), "field": repr(F),
           "size": rep.size,
           "pairs": [[_moebius_text(m), _moebius_text(n)]
                     for m, n in rep.pairs]})
    return EXIT_OK


def cmd_family(args) -> int:
    from .permtest import decide_exceptional, is_permutation, Exceptional
    F = _field_from_args(args)
    recs = []
    if args.family == "redei":
        from .families import redei, redei_canonical
        if args.delta:
            E = F.extension(2)
            delta = element_from_text(E, args.delta)
            f = redei(args.n, delta)
        else:
            f = redei_canonical(args.n, F)
        recs.append(("redei", f))
    elif args.family == "quartic":
        from .families import quartic_exceptional, quartic_symmetries
        if args.alpha is None or args.beta is None:
            raise ValueError("family quartic requires --alpha and --beta")
        alpha = element_from_text(F, args.alpha)
        beta = element_from_text(F, args.beta)
        f = quartic_exceptional(alpha, beta)
        mu, nu = quartic_symmetries(alpha, beta)
        _emit({"family": "quartic", "alpha": element_to_text(alpha),
               "beta": element_to_text(beta),
               "symmetry_mu": _moebius_text(mu),
               "symmetry_nu": _moebius_text(nu)})
        recs.append(("quartic", f))
    elif args.family == "additive":
        from .families import is_additive
        if args.coeffs is None:
            raise ValueError("family additive requires --coeffs")
        L = poly_from_text(F, args.coeffs)
        if not is_additive(L):
            _info("polynomial is not additive")
            return EXIT_FAIL
        from .ratfunc import RatFunc
        recs.append(("additive", RatFunc.from_poly(L)))
    else:
        from .families import table1_entries
        for e in table1_entries(args.q if args.q else F.order):
            recs.append((f"table1[{e.row}]", e.func))
    ok = True
    for name, f in recs:
        perm = is_permutation(f, 1)
        verdict = decide_exceptional(f)
        rec = {"family": name, "function": ratfunc_to_text(f),
               "field": repr(f.field), "permutes_p1": perm,
               "exceptional": isinstance(verdict, Exceptional)}
        _emit(rec)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_monodromy(args) -> int:
    from .monodromy import cycle_notation, monodromy_filter
    pairs = monodromy_filter(args.n, require_primitive=args.primitive)
    for p in pairs:
        _emit({"n": args.n,
               "A_order": p.A.order,
               "A_generators": [cycle_notation(g) for g in p.A.gens],
               "A_primitive": p.a_primitive,
               "G_order": p.G.order,
               "G_generators": [cycle_notation(g) for g in p.G.gens]})
    _info(f"monodromy filter n={args.n}"
          f"{' (primitive)' if args.primitive else ''}: {len(pairs)} pairs")
    return EXIT_OK


def cmd_verify_all(args) -> int:
    from .verify import run_all
    results = run_all(extended=args.extended, emit=_emit, info=_info)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="permrat",
        description="exact classification toolkit for permutation rational "
                    "functions over small finite fields")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("exceptional", help="decide exceptionality of a function")
    _add_field_args(sp)
    sp.add_argument("--f", required=True, help="rational function in x (and w)")
    sp.add_argument("--window", type=int, default=12)
    sp.set_defaults(func=cmd_exceptional)

    sp = sub.add_parser("classify", help="classify a degree 1..4 function")
    _add_field_args(sp)
    sp.add_argument("--f", required=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("search", help="enumerate equivalence classes of "
                                       "degree-n permutations")
    sp.add_argument("--n", type=int, default=4, choices=(2, 3, 4))
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--extended", action="store_true",
                    help="allow 27 < q <= 81 at degree 4")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("count", help="count degree-4 permutations three ways")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--extended", action="store_true")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("stabilizer", help="all (mu, nu) with mu o f o nu = f")
    _add_field_args(sp)
    sp.add_argument("--f", required=True)
    sp.set_defaults(func=cmd_stabilizer)

    sp = sub.add_parser("family", help="construct and verify a family member")
    sp.add_argument("family", choices=("redei", "quartic", "additive", "table1"))
    _add_field_args(sp)
    sp.add_argument("--n", type=int, default=3, help="degree for redei")
    sp.add_argument("--delta", type=str, help="element of GF(q^2) for redei")
    sp.add_argument("--alpha", type=str, help="element for quartic")
    sp.add_argument("--beta", type=str, help="element for quartic")
    sp.add_argument("--coeffs", type=str, help="additive polynomial in x")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("monodromy", help="surviving (A, G) group pairs")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--primitive", action="store_true")
    sp.set_defaults(func=cmd_monodromy)

    sp = sub.add_parser("verify-all", help="run the acceptance suite")
    sp.add_argument("--extended", action="store_true",
                    help="include the extended search range q <= 81")
    sp.set_defaults(func=cmd_verify_all)

    ap.add_argument("--workers", type=int, default=1,
                    help="accepted for interface compatibility; execution is "
                         "sequential and deterministic regardless")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        ap.error("--workers must be >= 1")
    try:
        return args.func(args)
    except BudgetExceeded as e:
        _info(f"budget exceeded: {e}")
        return EXIT_BUDGET
    except (ValueError, ZeroDivisionError) as e:
        _info(f"error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
