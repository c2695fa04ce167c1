"""Text forms for field elements, polynomials and rational functions.

Grammar (whitespace-insensitive): an expression over ``+ - * / ^`` and
parentheses whose atoms are integers, the variable ``x``, and the field
generator symbols.  A plain one-step extension prints its generator as
``w``; taller towers use ``w1, w2, ...`` counted upward from the prime
field (``w1`` is accepted as an alias for ``w`` when parsing).

Printing emits the canonical normalized form (terms by descending degree,
coefficients as canonical representatives), and parse(print(f)) == f.
"""

from __future__ import annotations

import re

from .field import FieldElement, FiniteField, embed

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z]\w*|\^|\*|/|\+|-|\(|\))")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad token at {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    """Recursive-descent parser producing values in a caller-chosen algebra.

    The algebra supplies add/sub/mul/div/pow/neg over its values plus an
    atom table; this lets one grammar serve field elements (no x, no /)
    and rational functions alike.
    """

    def __init__(self, tokens, atoms, ops):
        self.toks = tokens
        self.i = 0
        self.atoms = atoms
        self.ops = ops

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input at {self.toks[self.i:]}")
        return v

    def expr(self):
        if self.peek() == "-":
            self.take()
            v = self.ops["neg"](self.term())
        else:
            if self.peek() == "+":
                self.take()
            v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            v = self.ops["add"](v, rhs) if op == "+" else self.ops["sub"](v, rhs)
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            v = self.ops["mul"](v, rhs) if op == "*" else self.ops["div"](v, rhs)
        return v

    def factor(self):
        v = self.atom()
        while self.peek() == "^":
            self.take()
            e = self.take()
            if e is None or not e.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            v = self.ops["pow"](v, int(e))
        return v

    def atom(self):
        t = self.take()
        if t is None:
            raise ValueError("unexpected end of input")
        if t == "(":
            v = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parenthesis")
            return v
        if t == "-":
            return self.ops["neg"](self.atom())
        if t.isdigit():
            return self.ops["int"](int(t))
        if t in self.atoms:
            return self.atoms[t]
        raise ValueError(f"unknown symbol {t!r}")


def _generator_symbols(F: FiniteField) -> dict[str, FieldElement]:
    tower = F.tower()
    syms: dict[str, FieldElement] = {}
    numbered = len(tower) > 2
    for level, field in enumerate(tower[1:], start=1):
        g = embed(field.gen(), F)
        syms[f"w{level}"] = g
        if not numbered and level == 1:
            syms["w"] = g
    if numbered and len(tower) > 1:
        syms.setdefault("w", syms["w1"])
    return syms


def element_from_text(F: FiniteField, text: str):
    atoms = _generator_symbols(F)
    ops = {
        "add": lambda a, b: a + b,
        "sub": lambda a, b: a - b,
        "mul": lambda a, b: a * b,
        "div": lambda a, b: a / b,
        "pow": lambda a, e: a ** e,
        "neg": lambda a: -a,
        "int": lambda n: F(n),
    }
    return _ExprParser(_tokenize(text), atoms, ops).parse()


def _gen_symbol(F: FiniteField) -> str:
    return "w" if F.height == 1 else f"w{F.height}"


def element_to_text(e: FieldElement) -> str:
    F = e.field
    if F.base is None:
        return str(e.val)
    sym = _gen_symbol(F)
    parts = []
    for i in range(F.degree - 1, -1, -1):
        c = e.val[i]
        if c == F.base.zero_raw:
            continue
        ctext = element_to_text(FieldElement(F.base, c))
        is_one = c == F.base.one_raw
        if i == 0:
            parts.append(ctext if _is_simple(ctext) else f"({ctext})")
        else:
            xpart = sym if i == 1 else f"{sym}^{i}"
            if is_one:
                parts.append(xpart)
            elif _is_simple(ctext):
                parts.append(f"{ctext}*{xpart}")
            else:
                parts.append(f"({ctext})*{xpart}")
    return "+".join(parts) if parts else "0"


def _is_simple(text: str) -> bool:
    return "+" not in text and "-" not in text


def poly_coeffs_to_text(F: FiniteField, coeffs, var: str) -> str:
    parts = []
    one = F.one_raw
    zero = F.zero_raw
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == zero:
            continue
        ctext = element_to_text(FieldElement(F, c))
        if i == 0:
            parts.append(ctext if _is_simple(ctext) else f"({ctext})")
            continue
        xpart = var if i == 1 else f"{var}^{i}"
        if c == one:
            parts.append(xpart)
        elif _is_simple(ctext):
            parts.append(f"{ctext}*{xpart}")
        else:
            parts.append(f"({ctext})*{xpart}")
    return "+".join(parts) if parts else "0"


def poly_to_text(p) -> str:
    return poly_coeffs_to_text(p.field, p.coeffs, "x")


def poly_from_text(F: FiniteField, text: str):
    """Parse a polynomial in x (generator symbols allowed) over F."""
    rf = ratfunc_from_text(F, text)
    if rf.den.degree != 0:
        raise ValueError(f"{text!r} is not a polynomial")
    return rf.num.scale(F.inv_raw(rf.den.coeffs[0]))


def ratfunc_from_text(F: FiniteField, text: str, symbols=None):
    from .polys import Poly
    from .ratfunc import RatFunc
    atoms = dict()
    for name, g in _generator_symbols(F).items():
        atoms[name] = RatFunc.constant(F, g)
    if symbols:
        for name, e in symbols.items():
            atoms[name] = RatFunc.constant(F, e)
    atoms["x"] = RatFunc(Poly.x(F), Poly.constant(F, 1))
    atoms["X"] = atoms["x"]
    ops = {
        "add": lambda a, b: a + b,
        "sub": lambda a, b: a - b,
        "mul": lambda a, b: a * b,
        "div": lambda a, b: a / b,
        "pow": lambda a, e: a ** e,
        "neg": lambda a: -a,
        "int": lambda n: RatFunc.constant(F, F(n)),
    }
    return _ExprParser(_tokenize(text), atoms, ops).parse()


def ratfunc_to_text(f) -> str:
    num = poly_to_text(f.num)
    if f.den.degree == 0:
        return num
    return f"({num})/({poly_to_text(f.den)})"
