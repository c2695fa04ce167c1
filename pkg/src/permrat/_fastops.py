"""Index-based fast arithmetic for exhaustive sweeps.

Hot loops (permutation sweeps, the classification search) index field
elements by their canonical rank and work on plain ints.  In
characteristic 2 the canonical rank is a bit-packing of the F_2
coordinates, so addition of ranks is XOR; multiplication goes through
discrete-log tables built once per field.  Odd-characteristic fields get
a full addition table, which caps their usable size; every odd sweep in
scope stays far below the cap.
"""

from __future__ import annotations

from .errors import BudgetExceeded
from .field import FieldElement, FiniteField, embed

_ODD_ADD_CAP = 1500       # full addition table below this
_ODD_SLOW_CAP = 50000     # rank-dict addition up to this

_ENGINES: dict = {}


class IndexField:
    """Field arithmetic on canonical ranks 0..order-1."""

    def __init__(self, field: FiniteField):
        Q = field.order
        self.field = field
        self.order = Q
        self.p = field.p
        self.char2 = field.p == 2
        vals = list(field.elements_raw())
        self._vals = vals
        self._rank = {v: i for i, v in enumerate(vals)}
        # discrete logs over a multiplicative generator
        gen_rank = self._find_generator()
        exp = [0] * (Q - 1)
        g = vals[gen_rank]
        cur = field.one_raw
        for i in range(Q - 1):
            exp[i] = self._rank[cur]
            cur = field.mul_raw(cur, g)
        log = [0] * Q
        for i, r in enumerate(exp):
            log[r] = i
        self.exp = exp
        self.log = log
        self.one = self._rank[field.one_raw]
        m = Q - 1
        inv = [0] * Q
        for r in range(1, Q):
            inv[r] = exp[(m - log[r]) % m]
        self.inv = inv
        self.addt = None
        if not self.char2:
            if Q > _ODD_SLOW_CAP:
                raise BudgetExceeded(
                    f"odd-characteristic index field of size {Q} exceeds cap")
            if Q <= _ODD_ADD_CAP:
                add_raw = field.add_raw
                rank = self._rank
                self.addt = [[rank[add_raw(a, b)] for b in vals] for a in vals]
        self._powvec: list[list[int]] = []

    def _find_generator(self) -> int:
        Q = self.field.order
        m = Q - 1
        primes = []
        t = m
        d = 2
        while d * d <= t:
            if t % d == 0:
                primes.append(d)
                while t % d == 0:
                    t //= d
            d += 1
        if t > 1:
            primes.append(t)
        for r in range(1, Q):
            v = self.field.unrank_raw(r)
            if all(self.field.pow_raw(v, m // ell) != self.field.one_raw
                   for ell in primes):
                return r
        raise AssertionError("no multiplicative generator found")

    # scalar ops on ranks

    def add(self, a: int, b: int) -> int:
        if self.char2:
            return a ^ b
        if self.addt is not None:
            return self.addt[a][b]
        return self._rank[self.field.add_raw(self._vals[a], self._vals[b])]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        m = self.order - 1
        return self.exp[(self.log[a] + self.log[b]) % m]

    def neg(self, a: int) -> int:
        if self.char2 or a == 0:
            return a
        half = (self.order - 1) // 2
        return self.exp[(self.log[a] + half) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else self.one
        m = self.order - 1
        return self.exp[(self.log[a] * e) % m]

    def rank_of(self, e: FieldElement) -> int:
        if e.field is not self.field:
            e = embed(e, self.field)
        return self._rank[e.val]

    def element_of(self, r: int) -> FieldElement:
        return FieldElement(self.field, self._vals[r])

    def poly_ranks(self, poly) -> list[int]:
        """Coefficient ranks of a polynomial over this field or a subfield."""
        p = poly.embed_into(self.field)
        return [self._rank[c] for c in p.coeffs]

    def power_vector(self, j: int) -> list[int]:
        """ranks of x^j for every x, cached."""
        while len(self._powvec) <= j:
            if not self._powvec:
                self._powvec.append([self.one] * self.order)
            elif len(self._powvec) == 1:
                self._powvec.append(list(range(self.order)))
            else:
                prev = self._powvec[-1]
                mul = self.mul
                self._powvec.append([mul(prev[x], x) for x in range(self.order)])
        vec = self._powvec[j]
        if j >= 1:
            vec = list(vec)
            vec[0] = 0
        return vec

    def poly_values(self, coeff_ranks: list[int]) -> list[int]:
        """Value vector of the polynomial at every field point (by rank)."""
        Q = self.order
        if not coeff_ranks:
            return [0] * Q
        vals = [coeff_ranks[0]] * Q
        add, mul = self.add, self.mul
        for j in range(1, len(coeff_ranks)):
            c = coeff_ranks[j]
            if c == 0:
                continue
            pv = self.power_vector(j)
            if c == self.one:
                vals = [add(v, t) for v, t in zip(vals, pv)]
            else:
                vals = [add(v, mul(c, t)) for v, t in zip(vals, pv)]
        return vals


def index_field(field: FiniteField) -> IndexField:
    eng = _ENGINES.get(field)
    if eng is None:
        eng = IndexField(field)
        _ENGINES[field] = eng
    return eng


def ratfunc_value_vector(eng: IndexField, f) -> list[int]:
    """Values of f on P^1 as ranks, with rank Q standing for infinity.

    Index i < Q is the point of rank i; the final entry is f(infinity).
    """
    Q = eng.order
    num = eng.poly_ranks(f.num)
    den = eng.poly_ranks(f.den)
    nv = eng.poly_values(num)
    dv = eng.poly_values(den)
    inv = eng.inv
    mul = eng.mul
    out = [0] * (Q + 1)
    for x in range(Q):
        d = dv[x]
        out[x] = Q if d == 0 else mul(nv[x], inv[d])
    dn, dd = f.num.degree, f.den.degree
    if dn > dd:
        out[Q] = Q
    elif dn < dd:
        out[Q] = 0
    else:
        out[Q] = mul(num[-1], inv[den[-1]])
    return out


def is_bijection_on_p1(eng: IndexField, f) -> bool:
    vals = ratfunc_value_vector(eng, f)
    seen = bytearray(eng.order + 2)
    for v in vals:
        if seen[v]:
            return False
        seen[v] = 1
    return True
