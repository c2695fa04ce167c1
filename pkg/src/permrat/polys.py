"""Univariate polynomials over a FiniteField: arithmetic and factorization.

Coefficients are stored constant-term first as raw field values with no
trailing zeros, so the zero polynomial is the empty tuple and
``degree == len(coeffs) - 1`` (-1 for zero).  Factorization is the textbook
squarefree / distinct-degree / equal-degree chain; the equal-degree splitter
draws its splitting elements from the canonical enumeration of the field, so
factor lists are deterministic across runs.
"""

from __future__ import annotations

from typing import Iterator

from .field import FieldElement, FiniteField, embed


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs=()):
        vals = [field.coerce_raw(c) for c in coeffs]
        while vals and vals[-1] == field.zero_raw:
            vals.pop()
        self.field = field
        self.coeffs = tuple(vals)

    @staticmethod
    def _raw(field: FiniteField, vals: list) -> "Poly":
        while vals and vals[-1] == field.zero_raw:
            vals.pop()
        p = Poly.__new__(Poly)
        p.field = field
        p.coeffs = tuple(vals)
        return p

    # -- constructors ---------------------------------------------------

    @staticmethod
    def x(field: FiniteField) -> "Poly":
        return Poly(field, [0, 1])

    @staticmethod
    def constant(field: FiniteField, c) -> "Poly":
        return Poly(field, [c])

    @staticmethod
    def monomial(field: FiniteField, c, n: int) -> "Poly":
        return Poly(field, [0] * n + [c])

    # -- basics ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one_raw

    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return FieldElement(self.field, self.coeffs[-1])

    def __getitem__(self, i: int) -> FieldElement:
        v = self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero_raw
        return FieldElement(self.field, v)

    def __eq__(self, other):
        return (isinstance(other, Poly) and other.field is self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        from .textforms import poly_to_text
        return poly_to_text(self)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        vals = list(a)
        add = F.add_raw
        for i, c in enumerate(b):
            vals[i] = add(vals[i], c)
        return Poly._raw(F, vals)

    def __sub__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        sub = F.sub_raw
        z = F.zero_raw
        a, b = self.coeffs, other.coeffs
        vals = [sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z)
                for i in range(n)]
        return Poly._raw(F, vals)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly._raw(F, [F.neg_raw(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(F, [])
        z = F.zero_raw
        add, mul = F.add_raw, F.mul_raw
        vals = [z] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == z:
                continue
            for j, y in enumerate(b):
                if y != z:
                    vals[i + j] = add(vals[i + j], mul(x, y))
        return Poly._raw(F, vals)

    def scale(self, c) -> "Poly":
        F = self.field
        c = F.coerce_raw(c)
        mul = F.mul_raw
        return Poly._raw(F, [mul(x, c) for x in self.coeffs])

    def shift(self, n: int) -> "Poly":
        """Multiply by X^n."""
        if self.is_zero():
            return self
        return Poly._raw(self.field, [self.field.zero_raw] * n + list(self.coeffs))

    def __divmod__(self, other: "Poly"):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(a) - 1 < db:
            return Poly._raw(F, []), self
        inv_lead = F.inv_raw(b[-1])
        sub, mul = F.sub_raw, F.mul_raw
        z = F.zero_raw
        q = [z] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if c == z:
                continue
            f = mul(c, inv_lead)
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] = sub(a[i - db + j], mul(f, b[j]))
        return Poly._raw(F, q), Poly._raw(F, a[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv_raw(self.coeffs[-1]))

    def pow(self, e: int) -> "Poly":
        result = Poly.constant(self.field, 1)
        sq = self
        while e:
            if e & 1:
                result = result * sq
            e >>= 1
            if e:
                sq = sq * sq
        return result

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        result = Poly.constant(self.field, 1) % mod
        sq = self % mod
        while e:
            if e & 1:
                result = (result * sq) % mod
            e >>= 1
            if e:
                sq = (sq * sq) % mod
        return result

    # -- calculus and evaluation -----------------------------------------

    def derivative(self) -> "Poly":
        F = self.field
        vals = [F.mul_raw(self.coeffs[i], F.from_int(i))
                for i in range(1, len(self.coeffs))]
        return Poly._raw(F, vals)

    def evaluate(self, x) -> FieldElement:
        """Horner evaluation; x may live in an extension of the field."""
        if isinstance(x, FieldElement) and x.field is not self.field:
            E = x.field
            coeffs = [embed(FieldElement(self.field, c), E).val for c in self.coeffs]
            F = E
        else:
            F = self.field
            coeffs = self.coeffs
            x = F.coerce_raw(x)
            E = F
        acc = F.zero_raw
        xv = x.val if isinstance(x, FieldElement) else x
        for c in reversed(coeffs):
            acc = F.add_raw(F.mul_raw(acc, xv), c)
        return FieldElement(E, acc)

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.constant(self.field, c)
        return acc

    def embed_into(self, E: FiniteField) -> "Poly":
        if E is self.field:
            return self
        return Poly._raw(E, [embed(FieldElement(self.field, c), E).val
                             for c in self.coeffs])

    def coeff_frobenius(self, q: int) -> "Poly":
        F = self.field
        return Poly._raw(F, [F.pow_raw(c, q) for c in self.coeffs])

    def terms(self) -> int:
        z = self.field.zero_raw
        return sum(1 for c in self.coeffs if c != z)

    def rank_key(self) -> tuple:
        F = self.field
        return tuple(F.rank_raw(c) for c in self.coeffs)


# -- gcd family -----------------------------------------------------------

def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """(g, s, t) with g = s*a + t*b, g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.constant(F, 1), Poly(F)
    t0, t1 = Poly(F), Poly.constant(F, 1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = F.inv_raw(r0.coeffs[-1])
    return r0.scale(c), s0.scale(c), t0.scale(c)


# -- squarefree machinery ---------------------------------------------------

def pth_root_poly(f: Poly) -> Poly:
    """For f in F[X^p], the g with g^p = f (coefficientwise p-th roots)."""
    F = f.field
    p = F.p
    root_exp = F.order // p
    vals = []
    for i in range(0, len(f.coeffs), p):
        vals.append(F.pow_raw(f.coeffs[i], root_exp))
    for i, c in enumerate(f.coeffs):
        if i % p and c != F.zero_raw:
            raise ValueError("polynomial is not in F[X^p]")
    return Poly._raw(F, vals)


def squarefree_part(f: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of f."""
    F = f.field
    if f.degree <= 0:
        return Poly.constant(F, 1)
    f = f.monic()
    d = f.derivative()
    if d.is_zero():
        return squarefree_part(pth_root_poly(f))
    g = poly_gcd(f, d)
    w = f // g                       # factors with multiplicity coprime to p
    rest = g
    while True:
        c = poly_gcd(rest, w)
        if c.degree <= 0:
            break
        rest = rest // c
    # rest now collects the factors whose multiplicity is divisible by p
    if rest.degree > 0:
        return (w * squarefree_part(pth_root_poly(rest))).monic()
    return w.monic()


def distinct_root_count(f: Poly) -> int:
    """Number of distinct roots of f in an algebraic closure."""
    if f.degree <= 0:
        return 0
    return squarefree_part(f).degree


# -- irreducibility and factorization ---------------------------------------

def is_irreducible(f: Poly) -> bool:
    F = f.field
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    if not f.is_monic():
        f = f.monic()
    q = F.order
    x = Poly.x(F)
    xq = x.powmod(q ** n, f)
    if xq != x % f:
        return False
    for ell in _prime_divisors(n):
        h = x.powmod(q ** (n // ell), f) - x
        if poly_gcd(h, f).degree > 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_irreducible(base: FiniteField, d: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree d over base.

    Candidates are ordered by their coefficient vector, constant term
    first, so the answer is deterministic across runs.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d == 1:
        return Poly.x(base)   # X is the lex-smallest monic linear
    for lower in _tuples_in_order(base, d):
        f = Poly._raw(base, list(lower) + [base.one_raw])
        if is_irreducible(f):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _tuples_in_order(F: FiniteField, d: int) -> Iterator[tuple]:
    # coefficient tuples (c_0,...,c_{d-1}) in lex order, c_0 most significant
    def rec(i):
        if i == d:
            yield ()
            return
        for c in F.elements_raw():
            for rest in rec(i + 1):
                yield (c,) + rest
    yield from rec(0)


def _splitting_candidates(F: FiniteField) -> Iterator[Poly]:
    """Deterministic stream of polynomials used by equal-degree splitting."""
    deg = 1
    while True:
        for lower in _tuples_in_order(F, deg):
            yield Poly._raw(F, list(lower) + [F.one_raw])
        deg += 1


def _edf(f: Poly, d: int) -> list[Poly]:
    """Split monic squarefree f, all of whose factors have degree d."""
    F = f.field
    n = f.degree
    if n == d:
        return [f]
    q = F.order
    out: list[Poly] = []
    work = [f]
    cands = _splitting_candidates(F)
    while work:
        g = work.pop()
        if g.degree == d:
            out.append(g)
            continue
        split = None
        while split is None:
            a = next(cands) % g
            if a.degree <= 0:
                continue
            if F.p == 2:
                # trace map splitting for even characteristic
                k = 0
                m = q ** d
                while (1 << k) < m:
                    k += 1
                t = a
                acc = a
                for _ in range(k - 1):
                    t = (t * t) % g
                    acc = (acc + t) % g
                h = poly_gcd(acc, g)
            else:
                t = a.powmod((q ** d - 1) // 2, g)
                h = poly_gcd(t - Poly.constant(F, 1), g)
            if 0 < h.degree < g.degree:
                split = h
        work.append(split)
        work.append(g // split)
    out.sort(key=lambda p: (p.degree, p.rank_key()))
    return out


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factorization, sorted; leading coefficient dropped.

    Returns [(irreducible, multiplicity), ...] with factors ordered by
    (degree, coefficient ranks).
    """
    F = f.field
    if f.degree < 1:
        return []
    f = f.monic()
    sqf = squarefree_part(f)
    irreducibles: list[Poly] = []
    # distinct-degree splitting of the squarefree part
    x = Poly.x(F)
    h = x
    rem = sqf
    d = 0
    q = F.order
    while rem.degree > 0:
        d += 1
        if 2 * d > rem.degree:
            irreducibles.append(rem)
            break
        h = h.powmod(q, rem)
        g = poly_gcd(h - x, rem)
        if g.degree > 0:
            irreducibles.extend(_edf(g, d))
            rem = rem // g
            h = h % rem
    out = []
    for p in irreducibles:
        m = 0
        g = f
        while True:
            quo, r = divmod(g, p)
            if not r.is_zero():
                break
            m += 1
            g = quo
        out.append((p, m))
    out.sort(key=lambda t: (t[0].degree, t[0].rank_key()))
    return out


def roots_in(f: Poly, E: FiniteField) -> list[FieldElement]:
    """Distinct roots of f in E, in canonical element order."""
    g = f.embed_into(E)
    if g.degree < 1:
        return []
    if E.order <= 512:
        zs = [FieldElement(E, v) for v in E.elements_raw()
              if g.evaluate(FieldElement(E, v)).val == E.zero_raw]
        return zs
    # restrict to the part of g splitting over E, then factor
    x = Poly.x(E)
    xq = x.powmod(E.order, g)
    lin = poly_gcd(xq - x, g)
    roots = []
    for p, _ in factor(lin):
        if p.degree == 1:
            roots.append(FieldElement(E, E.neg_raw(p.coeffs[0])))
    roots.sort(key=lambda e: e.rank)
    return roots


def minimal_polynomial(e: FieldElement, base: FiniteField) -> Poly:
    """Minimal polynomial of e over base (monic, coefficients in base)."""
    from .field import frobenius, descend
    conj = []
    cur = e
    while True:
        conj.append(cur)
        cur = frobenius(cur, 1, base)
        if cur == e:
            break
    E = e.field
    prod = Poly.constant(E, 1)
    for c in conj:
        prod = prod * Poly(E, [E.neg_raw(c.val), E.one_raw])
    return Poly._raw(base, [descend(FieldElement(E, v), base).val
                            for v in prod.coeffs])


# -- small dense linear algebra ---------------------------------------------

def nullspace(rows: list[list], F: FiniteField) -> list[list]:
    """Basis of the right nullspace of the matrix (entries are raw values)."""
    if not rows:
        return []
    ncols = len(rows[0])
    mat = [list(r) for r in rows]
    z, one = F.zero_raw, F.one_raw
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != z:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = F.inv_raw(mat[r][c])
        mat[r] = [F.mul_raw(x, inv) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != z:
                fac = mat[i][c]
                mat[i] = [F.sub_raw(x, F.mul_raw(fac, y))
                          for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [z] * ncols
        vec[fc] = one
        for i, pc in enumerate(pivots):
            vec[pc] = F.neg_raw(mat[i][fc])
        basis.append(vec)
    return basis
