"""Permutation testing on P^1 and a certified exceptionality decision.

``decide_exceptional`` is three-valued.  A YES carries the extension
degree at which the permutation check plus the size bound certify
exceptionality; a NO carries either the failing degree 1 or the matched
non-exceptional family from the degree <= 4 classification; Undetermined
can only happen from degree 5 upward, where no finite NO-certificate is
available.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._fastops import index_field, is_bijection_on_p1
from .errors import BudgetExceeded, VerificationFailure
from .polys import Poly
from .ratfunc import RatFunc, inseparable_reduction

POINT_BUDGET = 10 ** 7

DEFAULT_WINDOW = 12


@dataclass(frozen=True)
class Exceptional:
    """Certified YES: f permutes P^1 of the level-th extension and the
    field is large enough that this forces exceptionality."""
    level: int


@dataclass(frozen=True)
class NotExceptional:
    """Certified NO; reason is a failing extension degree or a family tag."""
    reason: object


@dataclass(frozen=True)
class Undetermined:
    tested: tuple[int, ...]


Verdict = object


def exceptionality_bound(n: int) -> int:
    """Least B with: a degree-n permutation of P^1(F_Q), Q >= B, is exceptional."""
    if n < 2:
        raise ValueError("bound is defined for degree >= 2")
    t = 2 * (n - 2) ** 2 + 1
    return t * t + 1


def is_permutation(f: RatFunc, ext_degree: int = 1,
                   budget: int = POINT_BUDGET) -> bool:
    """True iff f is a bijection of P^1(F_{q^ext_degree})."""
    if ext_degree < 1:
        raise ValueError("extension degree must be >= 1")
    F = f.field
    Q = F.order ** ext_degree
    if Q + 1 > budget:
        raise BudgetExceeded(f"{Q + 1} points exceed budget {budget}")
    E = F if ext_degree == 1 else F.extension(ext_degree)
    return is_bijection_on_p1(index_field(E), f)


def is_exceptional_additive(L: Poly) -> bool:
    """Exceptionality test for additive polynomials: no root in F_q^*."""
    from .families import is_additive
    if not is_additive(L) or L.is_zero():
        raise ValueError("polynomial is not additive")
    F = L.field
    for v in F.elements_raw():
        if v == F.zero_raw:
            continue
        if L.evaluate(F(v)).val == F.zero_raw:
            return False
    return True


def decide_exceptional(f: RatFunc, window: int = DEFAULT_WINDOW,
                       budget: int = POINT_BUDGET) -> Verdict:
    """Three-valued exceptionality decision with certificates.

    Inseparable input is first reduced to its separable core g (with
    f = g(X^{p^r})), which has the same exceptionality, and the size bound
    is taken at deg g: a permutation certificate for g over a field past
    that bound makes g, hence f, exceptional.  Degree-one cores are a
    degenerate case (any degree-one map permutes every P^1), certified at
    the first level.
    """
    if f.is_constant():
        raise ValueError("exceptionality is defined for nonconstant functions")
    g, _r = inseparable_reduction(f)
    F = f.field
    q = F.order
    if not is_permutation(g, 1, budget):
        return NotExceptional(1)
    bound = exceptionality_bound(max(2, g.degree))
    lstar = 1
    while q ** lstar < bound:
        lstar += 1
    if g.degree <= 4:
        from .classify import classify
        res = classify(g)
        if res is None:
            raise VerificationFailure("permutation check and classifier disagree")
        if not res.exceptional:
            return NotExceptional(res.family)
        for level in range(lstar, lstar + window):
            if q ** level + 1 > budget:
                raise BudgetExceeded(
                    f"no testable level >= {lstar} within point budget")
            if is_permutation(g, level, budget):
                return Exceptional(level)
        raise VerificationFailure(
            "classified exceptional but no certificate level found in window")
    tested = []
    for level in range(lstar, lstar + window):
        if q ** level + 1 > budget:
            break
        tested.append(level)
        if is_permutation(g, level, budget):
            return Exceptional(level)
    if not tested:
        raise BudgetExceeded(f"no testable level >= {lstar} within point budget")
    return Undetermined(tuple(tested))
