"""Exact arithmetic in small finite fields and their extension towers.

A field is either a prime field GF(p) or an extension of an existing field
by a monic irreducible modulus.  Extensions are always built as towers over
the field the caller already has, so "this element has coefficients in the
base field" is a direct test on its coefficient vector rather than a
computation with embeddings.

Raw element values are plain Python data: an ``int`` in ``[0, p)`` for a
prime field, and a tuple of base-field raw values (constant coefficient
first, length = relative degree) for an extension.  :class:`FieldElement`
is a thin wrapper offering operators; all hot loops work on raw values.

Canonical element order: by coefficient vector, constant term first, with
0 < 1 < ... < p-1 on the prime field and recursively on towers.  The
``rank``/``unrank`` pair realizes this order as indices ``0 .. order-1``.

Moduli default to the lexicographically smallest monic irreducible of the
requested degree, so independently rebuilt towers are identical.
"""

from __future__ import annotations

from typing import Iterator, Optional


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p**k with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, k
        p += 1
    return q, 1


class FiniteField:
    """GF(p) or a one-step extension of another FiniteField.

    Do not call the constructor directly; use :func:`GF` or
    :meth:`FiniteField.extension` so that fields are cached and shared.
    """

    def __init__(self, p: int, base: Optional["FiniteField"], degree: int,
                 modulus_coeffs, _token=None):
        if _token is not _FIELD_TOKEN:
            raise TypeError("use GF(q) or field.extension(m) to build fields")
        self.p = p
        self.base = base
        self.degree = degree          # relative degree over base (1 for prime)
        self.modulus_coeffs = modulus_coeffs  # monic, tuple of base raw vals, or None
        if base is None:
            self.order = p
            self.height = 0
        else:
            self.order = base.order ** degree
            self.height = base.height + 1
        self._ext_cache: dict = {}
        if base is None:
            self.zero_raw = 0
            self.one_raw = 1 % p
        else:
            self.zero_raw = (base.zero_raw,) * degree
            one = [base.zero_raw] * degree
            one[0] = base.one_raw
            self.one_raw = tuple(one)
            self._xpow = self._build_xpow()
        self.zero = FieldElement(self, self.zero_raw)
        self.one = FieldElement(self, self.one_raw)

    # -- construction -------------------------------------------------

    def extension(self, m: int, modulus=None) -> "FiniteField":
        """The degree-m extension of this field.

        ``modulus`` may be a Poly over this field or a raw coefficient
        tuple; by default the lex-smallest monic irreducible of degree m
        is used.  Results are cached, so equal requests share one object.
        """
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if m == 1 and modulus is None:
            return self
        key_mod = None
        mod_coeffs = None
        if modulus is not None:
            mod_coeffs = _modulus_to_raw(self, modulus, m)
            key_mod = mod_coeffs
        key = (m, key_mod)
        cached = self._ext_cache.get(key)
        if cached is not None:
            return cached
        if mod_coeffs is None:
            from .polys import find_irreducible
            mod_coeffs = find_irreducible(self, m).coeffs
            # share the cache slot with the explicit-modulus spelling
            explicit = self._ext_cache.get((m, mod_coeffs))
            if explicit is not None:
                self._ext_cache[key] = explicit
                return explicit
        ext = FiniteField(self.p, self, m, mod_coeffs, _token=_FIELD_TOKEN)
        self._ext_cache[key] = ext
        self._ext_cache[(m, mod_coeffs)] = ext
        return ext

    def _build_xpow(self):
        # X^j mod modulus for j = degree .. 2*degree-2, as coefficient tuples
        base = self.base
        d = self.degree
        top = [base.neg_raw(c) for c in self.modulus_coeffs[:d]]
        xpow = [tuple(top)]
        for _ in range(d - 2):
            prev = xpow[-1]
            shifted = [base.zero_raw] + list(prev[: d - 1])
            lead = prev[d - 1]
            if lead != base.zero_raw:
                shifted = [base.add_raw(shifted[i], base.mul_raw(lead, top[i]))
                           for i in range(d)]
            xpow.append(tuple(shifted))
        return xpow

    # -- raw arithmetic ------------------------------------------------

    def add_raw(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        badd = self.base.add_raw
        return tuple(badd(x, y) for x, y in zip(a, b))

    def sub_raw(self, a, b):
        if self.base is None:
            return (a - b) % self.p
        bsub = self.base.sub_raw
        return tuple(bsub(x, y) for x, y in zip(a, b))

    def neg_raw(self, a):
        if self.base is None:
            return (-a) % self.p
        bneg = self.base.neg_raw
        return tuple(bneg(x) for x in a)

    def scale_raw(self, a, c):
        """Multiply an extension element by a base-field scalar."""
        if self.base is None:
            return (a * c) % self.p
        bmul = self.base.mul_raw
        return tuple(bmul(x, c) for x in a)

    def mul_raw(self, a, b):
        if self.base is None:
            return (a * b) % self.p
        base = self.base
        d = self.degree
        bz = base.zero_raw
        badd, bmul = base.add_raw, base.mul_raw
        conv = [bz] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == bz:
                continue
            for j, y in enumerate(b):
                if y == bz:
                    continue
                conv[i + j] = badd(conv[i + j], bmul(x, y))
        for j in range(2 * d - 2, d - 1, -1):
            lead = conv[j]
            if lead == bz:
                continue
            red = self._xpow[j - d]
            for i in range(d):
                conv[i] = badd(conv[i], bmul(lead, red[i]))
        return tuple(conv[:d])

    def pow_raw(self, a, e: int):
        if e < 0:
            return self.pow_raw(self.inv_raw(a), -e)
        if a == self.zero_raw:
            return self.one_raw if e == 0 else self.zero_raw
        if e >= self.order:
            e = e % (self.order - 1)
        result = self.one_raw
        sq = a
        while e:
            if e & 1:
                result = self.mul_raw(result, sq)
            e >>= 1
            if e:
                sq = self.mul_raw(sq, sq)
        return result

    def inv_raw(self, a):
        if a == self.zero_raw:
            raise ZeroDivisionError("finite field inversion of zero")
        return self.pow_raw(a, self.order - 2)

    def div_raw(self, a, b):
        return self.mul_raw(a, self.inv_raw(b))

    def from_int(self, n: int):
        if self.base is None:
            return n % self.p
        vec = [self.base.zero_raw] * self.degree
        vec[0] = self.base.from_int(n)
        return tuple(vec)

    def coerce_raw(self, x):
        """Raw value from an int, FieldElement of this field, or raw value."""
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise ValueError("element belongs to a different field")
            return x.val
        return x

    # -- canonical ordering --------------------------------------------

    def rank_raw(self, a) -> int:
        if self.base is None:
            return a
        r = 0
        b = self.base
        bo = b.order
        for c in a:                      # constant term is most significant
            r = r * bo + b.rank_raw(c)
        return r

    def unrank_raw(self, r: int):
        if self.base is None:
            return r % self.p
        b = self.base
        bo = b.order
        digits = []
        for _ in range(self.degree):
            digits.append(b.unrank_raw(r % bo))
            r //= bo
        digits.reverse()
        return tuple(digits)

    def elements_raw(self) -> Iterator:
        for r in range(self.order):
            yield self.unrank_raw(r)

    def elements(self) -> Iterator["FieldElement"]:
        """All field elements in canonical order."""
        for v in self.elements_raw():
            yield FieldElement(self, v)

    # -- misc ----------------------------------------------------------

    def __call__(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce_raw(x))

    def gen(self) -> "FieldElement":
        """Root of the modulus (the element printed as ``w``)."""
        if self.base is None:
            raise ValueError("prime field has no extension generator")
        vec = [self.base.zero_raw] * self.degree
        vec[1] = self.base.one_raw
        return FieldElement(self, tuple(vec))

    def tower(self) -> list["FiniteField"]:
        """Chain of fields from the prime field up to this one."""
        chain = []
        f: Optional[FiniteField] = self
        while f is not None:
            chain.append(f)
            f = f.base
        chain.reverse()
        return chain

    def absolute_degree(self) -> int:
        k = 1
        for f in self.tower()[1:]:
            k *= f.degree
        return k

    def __repr__(self):
        return field_to_text(self)

    def __hash__(self):
        return hash((self.p, self.order, id(self.base), self.modulus_coeffs))


_FIELD_TOKEN = object()
_PRIME_CACHE: dict[int, FiniteField] = {}


def prime_field(p: int) -> FiniteField:
    f = _PRIME_CACHE.get(p)
    if f is None:
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        f = FiniteField(p, None, 1, None, _token=_FIELD_TOKEN)
        _PRIME_CACHE[p] = f
    return f


def GF(q: int, modulus=None) -> FiniteField:
    """The field with q = p^k elements, built over GF(p).

    With no modulus the lex-smallest irreducible is used, so GF(q) is
    canonical and two calls return the same object.
    """
    p, k = factor_prime_power(q)
    if k == 1:
        if modulus is not None:
            raise ValueError("prime fields take no modulus")
        return prime_field(p)
    return prime_field(p).extension(k, modulus)


def _modulus_to_raw(base: FiniteField, modulus, m: int):
    from .polys import Poly
    if isinstance(modulus, Poly):
        if modulus.field is not base:
            raise ValueError("modulus must be a polynomial over the base field")
        coeffs = modulus.coeffs
    elif isinstance(modulus, str):
        from .textforms import poly_from_text
        coeffs = poly_from_text(base, modulus).coeffs
    else:
        coeffs = tuple(base.coerce_raw(c) for c in modulus)
    if len(coeffs) != m + 1 or coeffs[-1] != base.one_raw:
        raise ValueError(f"modulus must be monic of degree {m}")
    return coeffs


class FieldElement:
    """An element of a FiniteField; immutable and hashable."""

    __slots__ = ("field", "val")

    def __init__(self, field: FiniteField, val):
        self.field = field
        self.val = val

    def _rhs(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other.val
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add_raw(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_raw(self.val, v))

    def __rsub__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_raw(v, self.val))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_raw(self.val))

    def __mul__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_raw(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div_raw(self.val, v))

    def __rtruediv__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div_raw(v, self.val))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_raw(self.val, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_raw(self.val))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.val == other.val
        if isinstance(other, int):
            return self.val == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.val))

    def __bool__(self):
        return self.val != self.field.zero_raw

    @property
    def rank(self) -> int:
        return self.field.rank_raw(self.val)

    def __repr__(self):
        from .textforms import element_to_text
        return element_to_text(self)


# -- tower navigation ---------------------------------------------------

def tower_degree(sub: FiniteField, ext: FiniteField) -> int:
    """Relative degree [ext : sub] when ext sits above sub in a tower."""
    deg = 1
    f: Optional[FiniteField] = ext
    while f is not None:
        if f is sub:
            return deg
        deg *= f.degree
        f = f.base
    raise ValueError(f"{ext!r} is not an extension of {sub!r}")


def in_tower(sub: FiniteField, ext: FiniteField) -> bool:
    try:
        tower_degree(sub, ext)
        return True
    except ValueError:
        return False


def embed(e: FieldElement, ext: FiniteField) -> FieldElement:
    """Image of e under the canonical inclusion of its field into ext."""
    if e.field is ext:
        return e
    tower_degree(e.field, ext)  # raises if not above
    chain = []
    f: Optional[FiniteField] = ext
    while f is not e.field:
        chain.append(f)
        f = f.base
    val = e.val
    for level in reversed(chain):
        vec = [level.base.zero_raw] * level.degree
        vec[0] = val
        val = tuple(vec)
    return FieldElement(ext, val)


def descend(e: FieldElement, sub: FiniteField) -> FieldElement:
    """Inverse of :func:`embed`; raises ValueError if e is outside sub."""
    if e.field is sub:
        return e
    tower_degree(sub, e.field)
    val = e.val
    f = e.field
    while f is not sub:
        if any(c != f.base.zero_raw for c in val[1:]):
            raise ValueError(f"{e!r} does not lie in {sub!r}")
        val = val[0]
        f = f.base
    return FieldElement(sub, val)


def lies_in(e: FieldElement, sub: FiniteField) -> bool:
    try:
        descend(e, sub)
        return True
    except ValueError:
        return False


# -- field maps -------------------------------------------------------------

def frobenius(e: FieldElement, i: int, base: FiniteField) -> FieldElement:
    """e^(q^i) where q = |base|, for e in an extension of base."""
    tower_degree(base, e.field)
    q = base.order
    m = tower_degree(base, e.field)
    i %= m
    return FieldElement(e.field, e.field.pow_raw(e.val, q ** i))


def trace(e: FieldElement, base: FiniteField) -> FieldElement:
    """Relative trace of e down to base: sum of e^(q^i)."""
    m = tower_degree(base, e.field)
    q = base.order
    F = e.field
    acc = F.zero_raw
    cur = e.val
    for _ in range(m):
        acc = F.add_raw(acc, cur)
        cur = F.pow_raw(cur, q)
    return descend(FieldElement(F, acc), base)


def norm(e: FieldElement, base: FiniteField) -> FieldElement:
    m = tower_degree(base, e.field)
    q = base.order
    F = e.field
    acc = F.one_raw
    cur = e.val
    for _ in range(m):
        acc = F.mul_raw(acc, cur)
        cur = F.pow_raw(cur, q)
    return descend(FieldElement(F, acc), base)


def is_square(e: FieldElement) -> bool:
    """True iff e is a square in its own field.

    Squaring is a bijection in characteristic 2, so every element of an
    even-order field is a square.
    """
    F = e.field
    if F.p == 2:
        return True
    if e.val == F.zero_raw:
        return True
    return F.pow_raw(e.val, (F.order - 1) // 2) == F.one_raw


def sqrt(e: FieldElement) -> FieldElement:
    """A square root of e (the canonically-least one in odd characteristic)."""
    F = e.field
    if F.p == 2:
        # squaring is the Frobenius, so invert it by iterating
        return FieldElement(F, F.pow_raw(e.val, F.order // 2))
    if not is_square(e):
        raise ValueError("element is not a square")
    if e.val == F.zero_raw:
        return e
    best = None
    for v in F.elements_raw():
        if F.mul_raw(v, v) == e.val:
            best = v
            break
    return FieldElement(F, best)


# -- text format ----------------------------------------------------------

def field_to_text(F: FiniteField) -> str:
    if F.base is None:
        return f"GF({F.p})"
    if F.base.base is None:
        from .textforms import poly_coeffs_to_text
        k = F.degree
        mod = poly_coeffs_to_text(F.base, F.modulus_coeffs, "x")
        from .polys import find_irreducible
        default = find_irreducible(F.base, k).coeffs
        if F.modulus_coeffs == default:
            return f"GF({F.p}^{k})"
        return f"GF({F.p}^{k}) mod {mod}"
    return f"GF({F.base.order}^{F.degree}) over {field_to_text(F.base)}"


def field_from_text(text: str) -> FiniteField:
    """Parse `GF(p^k)` or `GF(p^k) mod <poly in x>`."""
    import re
    s = text.strip()
    m = re.fullmatch(r"GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*(?:mod\s+(.+))?", s)
    if not m:
        raise ValueError(f"cannot parse field spec: {text!r}")
    p = int(m.group(1))
    k = int(m.group(2) or 1)
    modtext = m.group(3)
    if k == 1 and "^" not in s:
        # allow GF(q) with q a prime power
        p, k = factor_prime_power(p)
    if modtext is None:
        return prime_field(p) if k == 1 else prime_field(p).extension(k)
    from .textforms import poly_from_text
    base = prime_field(p)
    return base.extension(k, poly_from_text(base, modtext))
