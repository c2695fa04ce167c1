"""Rational functions on the projective line over a finite field.

A :class:`RatFunc` is a coprime numerator/denominator pair with monic
denominator; its degree is max(deg num, deg den).  Degree-one functions
get their own :class:`Moebius` type, stored as a projectively normalized
2x2 matrix (first nonzero entry 1), so two Moebius values are equal iff
their matrices are equal.

Points of P^1 are field elements together with the :data:`INFINITY`
sentinel.  Branch points are reported as (extension degree, element of the
canonical extension of that degree), which keeps "the three branch points
are a single Frobenius orbit in GF(q^3)" an exact, testable statement.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional, Union

from .errors import BudgetExceeded, VerificationFailure
from .field import (FieldElement, FiniteField, descend, embed, frobenius,
                    lies_in, tower_degree)
from .polys import (Poly, distinct_root_count, factor, minimal_polynomial,
                    nullspace, poly_gcd, roots_in)


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INFINITY = _Infinity()

ProjPoint = Union[FieldElement, _Infinity]


def p1_points(F: FiniteField) -> list[ProjPoint]:
    """The q+1 points of P^1(F) in canonical order, infinity last."""
    return [FieldElement(F, v) for v in F.elements_raw()] + [INFINITY]


def point_rank(pt: ProjPoint, F: FiniteField) -> int:
    return F.order if pt is INFINITY else F.rank_raw(pt.val)


def embed_point(pt: ProjPoint, E: FiniteField) -> ProjPoint:
    return INFINITY if pt is INFINITY else embed(pt, E)


class RatFunc:
    """Coprime num/den pair over one field; immutable once built."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.field is not den.field:
            raise ValueError("numerator and denominator over different fields")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        if not den.is_monic():
            c = den.field.inv_raw(den.coeffs[-1])
            num = num.scale(c)
            den = den.scale(c)
        self.num = num
        self.den = den

    @staticmethod
    def constant(F: FiniteField, c) -> "RatFunc":
        return RatFunc(Poly.constant(F, c), Poly.constant(F, 1))

    @staticmethod
    def x(F: FiniteField) -> "RatFunc":
        return RatFunc(Poly.x(F), Poly.constant(F, 1))

    @staticmethod
    def from_poly(p: Poly) -> "RatFunc":
        return RatFunc(p, Poly.constant(p.field, 1))

    @property
    def field(self) -> FiniteField:
        return self.num.field

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and other.field is self.field
                and other.num == self.num and other.den == self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        from .textforms import ratfunc_to_text
        return ratfunc_to_text(self)

    # field operations (used by the parser and by constructions)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return RatFunc(self.den.pow(-e), self.num.pow(-e))
        return RatFunc(self.num.pow(e), self.den.pow(e))

    def __call__(self, x):
        if isinstance(x, RatFunc):
            return compose(self, x)
        return evaluate(self, x)

    def embed_into(self, E: FiniteField) -> "RatFunc":
        if E is self.field:
            return self
        return RatFunc(self.num.embed_into(E), self.den.embed_into(E))

    def rank_key(self) -> tuple:
        return (self.num.rank_key(), self.den.rank_key())

    def term_count(self) -> int:
        return self.num.terms() + self.den.terms()


def normalize(a: Poly, b: Poly) -> RatFunc:
    """Canonical form of a/b: gcd divided out, denominator monic."""
    return RatFunc(a, b)


def evaluate(f: RatFunc, x: ProjPoint) -> ProjPoint:
    """Value of f at a point of P^1 (of f's field or an extension).

    The value at infinity is the degree-max homogenization evaluated at
    (1:0): infinity when deg num > deg den, the leading-coefficient ratio
    when the degrees tie, zero when deg num < deg den.
    """
    F = f.field
    if x is INFINITY:
        dn, dd = f.num.degree, f.den.degree
        if dn > dd:
            return INFINITY
        if dn < dd:
            return F.zero
        return f.num.leading() / f.den.leading()
    if isinstance(x, FieldElement) and x.field is not F:
        f = f.embed_into(x.field)
        F = x.field
    else:
        x = F(x) if not isinstance(x, FieldElement) else x
    nv = f.num.evaluate(x)
    dv = f.den.evaluate(x)
    if dv.val == F.zero_raw:
        return INFINITY
    return nv / dv


def derivative(f: RatFunc) -> RatFunc:
    """Quotient-rule derivative, normalized."""
    a, b = f.num, f.den
    return RatFunc(b * a.derivative() - a * b.derivative(), b * b)


def is_separable(f: RatFunc) -> bool:
    return not (f.num.derivative().is_zero() and f.den.derivative().is_zero())


def inseparable_reduction(f: RatFunc) -> tuple[RatFunc, int]:
    """Write f = g(X^(p^r)) with g separable; returns (g, r)."""
    if f.is_constant():
        raise ValueError("constant functions have no separable core")
    p = f.field.p
    r = 0
    while not is_separable(f):
        f = RatFunc(_exponent_divide(f.num, p), _exponent_divide(f.den, p))
        r += 1
    return f, r


def _exponent_divide(poly: Poly, p: int) -> Poly:
    for i, c in enumerate(poly.coeffs):
        if i % p and c != poly.field.zero_raw:
            raise ValueError("polynomial is not in F[X^p]")
    return Poly._raw(poly.field, [poly.coeffs[i]
                                  for i in range(0, len(poly.coeffs), p)])


def compose(g: RatFunc, h: RatFunc) -> RatFunc:
    """g(h(X)); degrees multiply."""
    if g.field is not h.field:
        raise ValueError("composition requires a common field")
    F = g.field
    s, t = h.num, h.den
    k = max(g.num.degree, g.den.degree, 0)
    # powers s^i t^(k-i), shared by numerator and denominator
    spow = [Poly.constant(F, 1)]
    tpow = [Poly.constant(F, 1)]
    for _ in range(k):
        spow.append(spow[-1] * s)
        tpow.append(tpow[-1] * t)
    num = Poly(F)
    den = Poly(F)
    for i in range(k + 1):
        basis = spow[i] * tpow[k - i]
        ci = g.num.coeffs[i] if i <= g.num.degree else F.zero_raw
        di = g.den.coeffs[i] if i <= g.den.degree else F.zero_raw
        if ci != F.zero_raw:
            num = num + basis.scale(ci)
        if di != F.zero_raw:
            den = den + basis.scale(di)
    return RatFunc(num, den)


def coeff_frobenius(f: RatFunc, base: FiniteField) -> RatFunc:
    """Apply x -> x^|base| to every coefficient of f."""
    q = base.order
    tower_degree(base, f.field)
    return RatFunc(f.num.coeff_frobenius(q), f.den.coeff_frobenius(q))


# -- Moebius transformations ------------------------------------------------


class Moebius:
    """Degree-one rational function as a normalized projective matrix."""

    __slots__ = ("field", "mat")

    def __init__(self, field: FiniteField, a, b, c, d):
        a, b, c, d = (field.coerce_raw(v) for v in (a, b, c, d))
        det = field.sub_raw(field.mul_raw(a, d), field.mul_raw(b, c))
        if det == field.zero_raw:
            raise ValueError("singular matrix does not define a Moebius map")
        for v in (a, b, c, d):
            if v != field.zero_raw:
                inv = field.inv_raw(v)
                a, b, c, d = (field.mul_raw(x, inv) for x in (a, b, c, d))
                break
        self.field = field
        self.mat = (a, b, c, d)

    @staticmethod
    def identity(F: FiniteField) -> "Moebius":
        return Moebius(F, 1, 0, 0, 1)

    def __eq__(self, other):
        return (isinstance(other, Moebius) and other.field is self.field
                and other.mat == self.mat)

    def __hash__(self):
        return hash((id(self.field), self.mat))

    def __repr__(self):
        from .textforms import ratfunc_to_text
        return f"Moebius({ratfunc_to_text(self.as_ratfunc())})"

    def __call__(self, pt: ProjPoint) -> ProjPoint:
        F = self.field
        a, b, c, d = self.mat
        if isinstance(pt, FieldElement) and pt.field is not F:
            return self.embed_into(pt.field)(pt)
        if pt is INFINITY:
            if c == F.zero_raw:
                return INFINITY
            return FieldElement(F, F.div_raw(a, c))
        x = pt.val
        dv = F.add_raw(F.mul_raw(c, x), d)
        nv = F.add_raw(F.mul_raw(a, x), b)
        if dv == F.zero_raw:
            return INFINITY
        return FieldElement(F, F.div_raw(nv, dv))

    def inverse(self) -> "Moebius":
        F = self.field
        a, b, c, d = self.mat
        return Moebius(F, d, F.neg_raw(b), F.neg_raw(c), a)

    def __matmul__(self, other: "Moebius") -> "Moebius":
        """Composition: (self @ other)(x) = self(other(x))."""
        F = self.field
        if other.field is not F:
            raise ValueError("composition requires a common field")
        a, b, c, d = self.mat
        e, f_, g, h = other.mat
        mul, add = F.mul_raw, F.add_raw
        return Moebius(
            F,
            add(mul(a, e), mul(b, g)), add(mul(a, f_), mul(b, h)),
            add(mul(c, e), mul(d, g)), add(mul(c, f_), mul(d, h)),
        )

    def as_ratfunc(self) -> RatFunc:
        F = self.field
        a, b, c, d = self.mat
        return RatFunc(Poly(F, [b, a]), Poly(F, [d, c]))

    @staticmethod
    def from_ratfunc(f: RatFunc) -> "Moebius":
        if f.degree != 1:
            raise ValueError("not a degree-one rational function")
        F = f.field
        a = f.num.coeffs[1] if f.num.degree == 1 else F.zero_raw
        b = f.num.coeffs[0] if f.num.degree >= 0 else F.zero_raw
        c = f.den.coeffs[1] if f.den.degree == 1 else F.zero_raw
        d = f.den.coeffs[0]
        return Moebius(F, a, b, c, d)

    def coeff_frobenius(self, base: FiniteField) -> "Moebius":
        F = self.field
        q = base.order
        return Moebius(F, *(F.pow_raw(v, q) for v in self.mat))

    def is_over(self, sub: FiniteField) -> bool:
        return all(lies_in(FieldElement(self.field, v), sub) for v in self.mat)

    def descend_to(self, sub: FiniteField) -> "Moebius":
        return Moebius(sub, *(descend(FieldElement(self.field, v), sub).val
                              for v in self.mat))

    def embed_into(self, E: FiniteField) -> "Moebius":
        if E is self.field:
            return self
        return Moebius(E, *(embed(FieldElement(self.field, v), E).val
                            for v in self.mat))

    def order(self) -> int:
        n = 1
        cur = self
        ident = Moebius.identity(self.field)
        while cur != ident:
            cur = cur @ self
            n += 1
        return n

    def rank_key(self) -> tuple:
        F = self.field
        return tuple(F.rank_raw(v) for v in self.mat)


def moebius_inverse(m: Moebius) -> Moebius:
    return m.inverse()


def all_moebius(F: FiniteField) -> Iterator[Moebius]:
    """All q^3 - q Moebius maps over F, in normalized-matrix order."""
    z = F.zero_raw
    one = F.one_raw
    for b in F.elements_raw():
        for c in F.elements_raw():
            bc = F.mul_raw(b, c)
            for d in F.elements_raw():
                if d != bc:
                    yield Moebius(F, one, b, c, d)
    for c in F.elements_raw():
        if c == z:
            continue
        for d in F.elements_raw():
            yield Moebius(F, z, one, c, d)


def _to_01inf(F: FiniteField, p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> Moebius:
    # unique map with p1 -> 0, p2 -> 1, p3 -> inf
    if p1 is INFINITY:
        d23 = (p2 - p3).val
        return Moebius(F, 0, d23, F.one_raw, F.neg_raw(p3.val))
    if p2 is INFINITY:
        return Moebius(F, 1, F.neg_raw(p1.val), F.one_raw, F.neg_raw(p3.val))
    if p3 is INFINITY:
        return Moebius(F, 1, F.neg_raw(p1.val), 0, (p2 - p1).val)
    a = (p2 - p3).val
    c = (p2 - p1).val
    return Moebius(F, a, F.neg_raw(F.mul_raw(p1.val, a)),
                   c, F.neg_raw(F.mul_raw(p3.val, c)))


def moebius_from_triple(src, dst) -> Moebius:
    """The unique Moebius map sending src[i] to dst[i] for i = 0, 1, 2."""
    fields = [p.field for p in (*src, *dst) if p is not INFINITY]
    if not fields:
        raise ValueError("need at least one finite point")
    F = max(fields, key=lambda f: f.order)
    src = tuple(embed_point(p, F) for p in src)
    dst = tuple(embed_point(p, F) for p in dst)
    for triple in (src, dst):
        if len(triple) != 3 or len({point_rank(p, F) for p in triple}) != 3:
            raise ValueError("points in each triple must be three and distinct")
    mu = _to_01inf(F, *dst).inverse() @ _to_01inf(F, *src)
    for s, t in zip(src, dst):
        got = mu(s)
        want = t
        ok = (got is INFINITY and want is INFINITY) or \
             (got is not INFINITY and want is not INFINITY and got == want)
        if not ok:
            raise VerificationFailure("triple interpolation failed to verify")
    return mu


# -- bivariate polynomials ----------------------------------------------------


class BivarPoly:
    """Dense bivariate polynomial, stored as Y-polynomials per X-power."""

    __slots__ = ("field", "rows")

    def __init__(self, field: FiniteField, rows):
        rows = list(rows)
        while rows and rows[-1].is_zero():
            rows.pop()
        self.field = field
        self.rows = tuple(rows)

    @staticmethod
    def zero(F: FiniteField) -> "BivarPoly":
        return BivarPoly(F, [])

    def is_zero(self) -> bool:
        return not self.rows

    @property
    def x_degree(self) -> int:
        return len(self.rows) - 1

    @property
    def y_degree(self) -> int:
        return max((r.degree for r in self.rows), default=-1)

    def coeff(self, i: int, j: int) -> FieldElement:
        if i >= len(self.rows):
            return FieldElement(self.field, self.field.zero_raw)
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, BivarPoly) and other.field is self.field
                and other.rows == self.rows)

    def __hash__(self):
        return hash((id(self.field), self.rows))

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        F = self.field
        n = max(len(self.rows), len(other.rows))
        zero = Poly(F)
        rows = [(self.rows[i] if i < len(self.rows) else zero)
                + (other.rows[i] if i < len(other.rows) else zero)
                for i in range(n)]
        return BivarPoly(F, rows)

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        F = self.field
        n = max(len(self.rows), len(other.rows))
        zero = Poly(F)
        rows = [(self.rows[i] if i < len(self.rows) else zero)
                - (other.rows[i] if i < len(other.rows) else zero)
                for i in range(n)]
        return BivarPoly(F, rows)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        F = self.field
        if self.is_zero() or other.is_zero():
            return BivarPoly.zero(F)
        rows = [Poly(F) for _ in range(len(self.rows) + len(other.rows) - 1)]
        for i, r in enumerate(self.rows):
            if r.is_zero():
                continue
            for j, s in enumerate(other.rows):
                if not s.is_zero():
                    rows[i + j] = rows[i + j] + r * s
        return BivarPoly(F, rows)

    def scale(self, c) -> "BivarPoly":
        return BivarPoly(self.field, [r.scale(c) for r in self.rows])

    def swap_xy(self) -> "BivarPoly":
        F = self.field
        ydeg = self.y_degree
        rows = []
        for j in range(ydeg + 1):
            rows.append(Poly(F, [self.rows[i].coeffs[j]
                                 if j <= self.rows[i].degree else F.zero_raw
                                 for i in range(len(self.rows))]))
        return BivarPoly(F, rows)

    def evaluate(self, x: FieldElement, y: FieldElement) -> FieldElement:
        F = self.field
        acc = F.zero_raw
        for r in reversed(self.rows):
            acc = F.add_raw(F.mul_raw(acc, x.val), r.evaluate(y).val)
        return FieldElement(F, acc)

    def embed_into(self, E: FiniteField) -> "BivarPoly":
        if E is self.field:
            return self
        return BivarPoly(E, [r.embed_into(E) for r in self.rows])

    def divide_by_x_minus_y(self) -> "BivarPoly":
        """Exact quotient by (X - Y); raises if the remainder is nonzero."""
        F = self.field
        if self.is_zero():
            return self
        y = Poly.x(F)     # the Y variable, as a polynomial in Y
        # synthetic division in X by the monic linear X - Y
        chain: list[Poly] = []                # b_d, b_{d-1}, ..., b_0
        b = None
        for i in range(len(self.rows) - 1, -1, -1):
            b = self.rows[i] if b is None else self.rows[i] + y * b
            chain.append(b)
        if not chain[-1].is_zero():
            raise ValueError("polynomial is not divisible by X - Y")
        quo = list(reversed(chain[:-1]))      # X-degree j gets b_{j+1}
        return BivarPoly(F, quo)

    def proportional_to(self, other: "BivarPoly") -> bool:
        """True iff self = c * other for a nonzero scalar c."""
        F = self.field
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if len(self.rows) != len(other.rows):
            return False
        c = None
        for r, s in zip(self.rows, other.rows):
            if r.degree != s.degree:
                return False
            for a, b in zip(r.coeffs, s.coeffs):
                az, bz = a == F.zero_raw, b == F.zero_raw
                if az != bz:
                    return False
                if az:
                    continue
                ratio = F.div_raw(a, b)
                if c is None:
                    c = ratio
                elif ratio != c:
                    return False
        return True

    def __repr__(self):
        from .textforms import poly_to_text
        parts = []
        for i, r in enumerate(self.rows):
            if r.is_zero():
                continue
            ytext = poly_to_text(r).replace("x", "y")
            xpart = "" if i == 0 else ("x*" if i == 1 else f"x^{i}*")
            parts.append(f"{xpart}({ytext})")
        return " + ".join(parts) if parts else "0"


def difference_numerator(f: RatFunc) -> BivarPoly:
    """Numerator of f(X) - f(Y) as a bivariate polynomial.

    Equals a(X)b(Y) - a(Y)b(X) for f = a/b in lowest terms; always
    divisible by X - Y, and antisymmetric under swapping X and Y.
    """
    F = f.field
    a, b = f.num, f.den
    z = F.zero_raw
    n = max(a.degree, b.degree)
    rows = []
    for i in range(n + 1):
        ai = a.coeffs[i] if i <= a.degree else z
        bi = b.coeffs[i] if i <= b.degree else z
        rows.append(b.scale(ai) - a.scale(bi))
    return BivarPoly(F, rows)


def bilinear_factor(F: FiniteField, gamma, c) -> BivarPoly:
    """The bivariate polynomial X*Y - gamma*(X+Y) - c."""
    gamma = F.coerce_raw(gamma)
    c = F.coerce_raw(c)
    ng = F.neg_raw(gamma)
    row0 = Poly(F, [F.neg_raw(c), ng])       # -c - gamma*Y
    row1 = Poly(F, [ng, F.one_raw])          # -gamma + Y
    return BivarPoly(F, [row0, row1])


def x_minus_y(F: FiniteField) -> BivarPoly:
    return BivarPoly(F, [Poly(F, [0, F.neg_raw(F.one_raw)]), Poly.constant(F, 1)])


# -- branch points -------------------------------------------------------------


def preimage_count(f: RatFunc, value, E: Optional[FiniteField] = None) -> int:
    """Number of distinct f-preimages of a value in P^1(closure).

    ``value`` is INFINITY or a FieldElement of f's field or an extension.
    """
    F = f.field
    if value is INFINITY:
        finite = distinct_root_count(f.den) if f.den.degree > 0 else 0
        return finite + (1 if f.num.degree > f.den.degree else 0)
    E = value.field
    a = f.num.embed_into(E)
    b = f.den.embed_into(E)
    c = a - b.scale(value.val)
    count = distinct_root_count(c) if c.degree > 0 else 0
    if c.degree < f.degree:
        count += 1      # infinity maps to this value
    return count


def branch_points(f: RatFunc) -> tuple[tuple[int, ProjPoint], ...]:
    """Branch points of a separable f of degree >= 2.

    Returns (m, beta) pairs where beta has fewer than deg f distinct
    preimages and lives in the canonical degree-m extension of f's field
    (m minimal).  Output is sorted by (m, element rank), infinity last
    within degree 1, and is closed under the q-th power map.
    """
    F = f.field
    n = f.degree
    if n < 2:
        raise ValueError("branch points are defined for degree >= 2")
    if not is_separable(f):
        raise ValueError("function is inseparable")
    results: list[tuple[int, ProjPoint]] = []
    if preimage_count(f, INFINITY) < n:
        results.append((1, INFINITY))
    # candidate finite branch values: f(infinity) and f at critical points
    candidates: list[FieldElement] = []
    v_inf = evaluate(f, INFINITY)
    if v_inf is not INFINITY:
        candidates.append(v_inf)
    dnum = derivative(f).num
    for h, _mult in factor(dnum):
        m = h.degree
        E = F if m == 1 else F.extension(m)
        for root in roots_in(h, E):
            v = evaluate(f.embed_into(E), root)
            if v is not INFINITY:
                candidates.append(v)
    seen_orbits: set = set()
    for v in candidates:
        mp = minimal_polynomial(v, F)
        key = mp.coeffs
        if key in seen_orbits:
            continue
        seen_orbits.add(key)
        if preimage_count(f, v) >= n:
            continue
        m0 = mp.degree
        E0 = F if m0 == 1 else F.extension(m0)
        for beta in roots_in(mp, E0):
            results.append((m0, beta))
    results.sort(key=lambda t: (t[0],
                                point_rank(t[1], t[1].field)
                                if t[1] is not INFINITY else F.order))
    return tuple(results)


# -- decomposition --------------------------------------------------------------


def left_component_witness(h: RatFunc, f: RatFunc) -> Optional[RatFunc]:
    """The g with f = g o h if one exists, else None.

    Solves the linear system in g's coefficients; deg h must divide
    deg f and be at least 2.
    """
    F = f.field
    if h.field is not F:
        raise ValueError("functions over different fields")
    if h.degree < 2:
        raise ValueError("inner function must have degree >= 2")
    if f.degree % h.degree:
        raise ValueError("degree of h does not divide degree of f")
    k = f.degree // h.degree
    s, t = h.num, h.den
    basis = []
    spow = [Poly.constant(F, 1)]
    tpow = [Poly.constant(F, 1)]
    for _ in range(k):
        spow.append(spow[-1] * s)
        tpow.append(tpow[-1] * t)
    for i in range(k + 1):
        basis.append(spow[i] * tpow[k - i])
    # unknowns u_0..u_k, v_0..v_k:  sum u_i B_i * den(f) = sum v_i B_i * num(f)
    col_polys = [B * f.den for B in basis] + [-(B * f.num) for B in basis]
    maxdeg = max(p.degree for p in col_polys)
    rows = []
    for d in range(maxdeg + 1):
        rows.append([p.coeffs[d] if d <= p.degree else F.zero_raw
                     for p in col_polys])
    for vec in nullspace(rows, F):
        u = Poly(F, vec[: k + 1])
        v = Poly(F, vec[k + 1:])
        if v.is_zero():
            continue
        g = RatFunc(u, v)
        if g.degree == k and compose(g, h) == f:
            return g
    return None


def is_left_component(h: RatFunc, f: RatFunc) -> bool:
    return left_component_witness(h, f) is not None


# -- symmetry groups -------------------------------------------------------------


def _fiber(f: RatFunc, value: ProjPoint, E: FiniteField) -> list[ProjPoint]:
    """All f-preimages of value inside P^1(E) (f already over E)."""
    out: list[ProjPoint] = []
    if value is INFINITY:
        pts = [FieldElement(E, r.val) for r in roots_in(f.den, E)]
        if f.num.degree > f.den.degree:
            pts.append(INFINITY)
        return pts
    c = f.num - f.den.scale(value.val)
    if c.degree > 0:
        out.extend(roots_in(c, E))
    if c.degree < f.degree:
        out.append(INFINITY)
    return out


def symmetries(f: RatFunc, m: int, budget: int = 10 ** 7) -> tuple[Moebius, ...]:
    """The group { mu in PGL2(F_{q^m}) : f o mu = f }.

    Complete by fiber matching: any symmetry maps the fiber of a point to
    itself, so candidates are read off three fibers and verified exactly.
    The result is checked to be closed under composition and inverse.
    """
    F = f.field
    E = F if m == 1 else F.extension(m)
    size = E.order ** 3 - E.order
    if size > budget:
        raise BudgetExceeded(f"|PGL2| = {size} exceeds budget {budget}")
    fE = f.embed_into(E)
    pts = p1_points(E)
    base_pts = pts[:3]
    fibers = [_fiber(fE, evaluate(fE, x), E) for x in base_pts]
    found: dict[tuple, Moebius] = {}
    for ys in itertools.product(*fibers):
        if len({point_rank(y, E) for y in ys}) != 3:
            continue
        try:
            mu = moebius_from_triple(tuple(base_pts), ys)
        except VerificationFailure:
            continue
        if mu.mat in found:
            continue
        if compose(fE, mu.as_ratfunc()) == fE:
            found[mu.mat] = mu
    group = sorted(found.values(), key=lambda g: g.rank_key())
    mats = set(found)
    for g1 in group:
        if g1.inverse().mat not in mats:
            raise VerificationFailure("symmetry set not closed under inverse")
        for g2 in group:
            if (g1 @ g2).mat not in mats:
                raise VerificationFailure("symmetry set not closed under composition")
    return tuple(group)
