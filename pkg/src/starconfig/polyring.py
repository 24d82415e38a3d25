"""Dense homogeneous forms in Q[x, y, z].

A :class:`Form` of degree ``d`` stores one coefficient per degree-``d``
monomial, in graded lexicographic order with ``x > y > z``.  So the
degree-2 layout is ``x^2, xy, xz, y^2, yz, z^2``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "Form",
    "FormSyntaxError",
    "NonHomogeneousError",
    "monomial_basis",
    "num_monomials",
    "monomial_index",
    "zero",
    "const",
    "linear",
    "X",
    "Y",
    "Z",
    "mul",
    "evaluate",
    "parse_form",
    "format_form",
    "random_form",
    "product_excluding",
    "primitive",
    "monomial_multiples",
]

Monomial = tuple[int, int, int]


def num_monomials(d: int) -> int:
    return comb(d + 2, 2)


@lru_cache(maxsize=None)
def _basis(d: int) -> tuple[Monomial, ...]:
    return tuple(
        (a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)
    )


def monomial_basis(d: int) -> list[Monomial]:
    """All degree-``d`` exponent triples, strictly decreasing in grlex order."""
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    return list(_basis(d))


@lru_cache(maxsize=None)
def _index(d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(_basis(d))}


def monomial_index(m: Monomial) -> int:
    return _index(sum(m))[m]


@lru_cache(maxsize=None)
def _product_table(d: int, e: int) -> tuple[tuple[int, ...], ...]:
    # table[i][j] = position of basis(d)[i] * basis(e)[j] in basis(d+e)
    target = _index(d + e)
    return tuple(
        tuple(target[(a + p, b + q, c + r)] for (p, q, r) in _basis(e))
        for (a, b, c) in _basis(d)
    )


@dataclass(frozen=True)
class Form:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree must be non-negative, got {self.degree}")
        if len(self.coeffs) != num_monomials(self.degree):
            raise ValueError(
                f"degree {self.degree} form needs {num_monomials(self.degree)} "
                f"coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, degree: int, coeffs: Iterable) -> "Form":
        return cls(degree, tuple(Fraction(c) for c in coeffs))

    @classmethod
    def from_terms(cls, degree: int, terms: dict[Monomial, object]) -> "Form":
        coeffs = [Fraction(0)] * num_monomials(degree)
        idx = _index(degree)
        for m, c in terms.items():
            if sum(m) != degree:
                raise NonHomogeneousError(degree, sum(m))
            coeffs[idx[m]] += Fraction(c)
        return cls(degree, tuple(coeffs))

    def terms(self) -> dict[Monomial, Fraction]:
        return {m: c for m, c in zip(_basis(self.degree), self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check_same_degree(self, other: "Form") -> None:
        if self.degree != other.degree:
            raise ValueError(
                f"cannot add forms of degree {self.degree} and {other.degree}"
            )

    def __add__(self, other: "Form") -> "Form":
        self._check_same_degree(other)
        return Form(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Form") -> "Form":
        self._check_same_degree(other)
        return Form(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Form":
        return Form(self.degree, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "Form":
        c = Fraction(c)
        return Form(self.degree, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Form):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __call__(self, point) -> Fraction:
        return evaluate(self, point)

    def __str__(self) -> str:
        return format_form(self)


def zero(d: int) -> Form:
    return Form(d, (Fraction(0),) * num_monomials(d))


def const(c) -> Form:
    return Form(0, (Fraction(c),))


def linear(a, b, c) -> Form:
    """The linear form ``a*x + b*y + c*z``."""
    return Form(1, (Fraction(a), Fraction(b), Fraction(c)))


X = linear(1, 0, 0)
Y = linear(0, 1, 0)
Z = linear(0, 0, 1)


def mul(f: Form, g: Form) -> Form:
    out = [Fraction(0)] * num_monomials(f.degree + g.degree)
    table = _product_table(f.degree, g.degree)
    gnz = [(j, b) for j, b in enumerate(g.coeffs) if b]
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        row = table[i]
        for j, b in gnz:
            out[row[j]] += a * b
    return Form(f.degree + g.degree, tuple(out))


def evaluate(f: Form, point) -> Fraction:
    """Value of ``f`` at the given coordinate triple (or anything with ``.coords``)."""
    px, py, pz = (Fraction(c) for c in getattr(point, "coords", point))
    d = f.degree
    xs = [Fraction(1)]
    ys = [Fraction(1)]
    zs = [Fraction(1)]
    for _ in range(d):
        xs.append(xs[-1] * px)
        ys.append(ys[-1] * py)
        zs.append(zs[-1] * pz)
    total = Fraction(0)
    for (a, b, c), coef in zip(_basis(d), f.coeffs):
        if coef:
            total += coef * xs[a] * ys[b] * zs[c]
    return total


def monomial_multiples(f: Form, e: int) -> list[Form]:
    """``m * f`` for every degree-``e`` monomial ``m``, in basis order."""
    table = _product_table(e, f.degree)
    n = num_monomials(e + f.degree)
    fnz = [(j, c) for j, c in enumerate(f.coeffs) if c]
    out = []
    for row in table:
        coeffs = [Fraction(0)] * n
        for j, c in fnz:
            coeffs[row[j]] = c
        out.append(Form(e + f.degree, tuple(coeffs)))
    return out


def product_excluding(lines: Sequence[Form], skip: Iterable[int] = ()) -> Form:
    """Product of ``lines[j]`` over all ``j`` not in ``skip`` (0-based indices)."""
    skip = set(skip)
    out = const(1)
    for j, f in enumerate(lines):
        if j not in skip:
            out = mul(out, f)
    return out


def primitive(f: Form) -> Form:
    """Positive rational multiple of ``f`` with coprime integer coefficients."""
    nz = [c for c in f.coeffs if c]
    if not nz:
        return f
    den = lcm(*(c.denominator for c in nz))
    g = gcd(*(int(c * den) for c in nz))
    return f.scale(Fraction(den, g))


def random_form(d: int, seed: int, bound: int = 100) -> Form:
    """Form with integer coefficients drawn uniformly from ``[-bound, bound]``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = random.Random(seed)
    return Form(d, tuple(Fraction(rng.randint(-bound, bound)) for _ in range(num_monomials(d))))


# --- text I/O ---------------------------------------------------------------


class FormSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NonHomogeneousError(ValueError):
    def __init__(self, first: int, second: int):
        super().__init__(f"expression is not homogeneous: found degrees {first} and {second}")
        self.degrees = (first, second)


_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(\*\*|[-+*/^()]))")

# sparse intermediate representation: exponent triple -> coefficient
_Poly = dict


def _padd(p: _Poly, q: _Poly, sign: int = 1) -> _Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(p: _Poly, q: _Poly) -> _Poly:
    out: _Poly = {}
    for (a, b, c), u in p.items():
        for (e, f, g), v in q.items():
            m = (a + e, b + f, c + g)
            out[m] = out.get(m, 0) + u * v
    return {m: c for m, c in out.items() if c}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise FormSyntaxError(f"unexpected character {text[start]!r}", start)
            num, var, op = m.groups()
            start = m.start(m.lastindex)
            if num is not None:
                self.tokens.append(("num", num, start))
            elif var is not None:
                self.tokens.append(("var", var, start))
            else:
                self.tokens.append(("op", "^" if op == "**" else op, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind == "end":
            raise FormSyntaxError(f"expected {value!r}", pos)

    def parse(self) -> _Poly:
        if not self.tokens:
            raise FormSyntaxError("empty expression", 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise FormSyntaxError(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> _Poly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        p = _padd({}, self.term(), sign)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                p = _padd(p, self.term(), -1 if val == "-" else 1)
            else:
                return p

    def term(self) -> _Poly:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = _pmul(p, self.factor())
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                p = _pmul(p, self.factor())
            else:
                return p

    def factor(self) -> _Poly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise FormSyntaxError("exponent must be a non-negative integer", pos)
            out: _Poly = {(0, 0, 0): Fraction(1)}
            for _ in range(int(val)):
                out = _pmul(out, base)
            return out
        return base

    def atom(self) -> _Poly:
        kind, val, pos = self.take()
        if kind == "num":
            value = Fraction(int(val))
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "num":
                    raise FormSyntaxError("denominator must be an integer literal", p3)
                if int(v3) == 0:
                    raise FormSyntaxError("zero denominator", p3)
                value /= int(v3)
            return {(0, 0, 0): value} if value else {}
        if kind == "var":
            return {{"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[val]: Fraction(1)}
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise FormSyntaxError("unexpected end of input", pos)
        raise FormSyntaxError(f"unexpected {val!r}", pos)


def parse_form(text: str, degree: int | None = None) -> Form:
    """Parse a homogeneous polynomial such as ``"2x-3y+5z"`` or ``"(x+y)^2 - 3/4xz"``.

    ``degree`` is only needed to place an identically zero expression; if
    given for a nonzero expression it must agree with the parsed degree.
    """
    poly = _Parser(text).parse()
    degrees = sorted({sum(m) for m in poly})
    if len(degrees) > 1:
        raise NonHomogeneousError(degrees[0], degrees[-1])
    if not degrees:
        return zero(0 if degree is None else degree)
    if degree is not None and degrees[0] != degree:
        raise NonHomogeneousError(degree, degrees[0])
    return Form.from_terms(degrees[0], poly)


def _format_monomial(m: Monomial) -> str:
    parts = []
    for var, e in zip("xyz", m):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "".join(parts)


def format_form(f: Form) -> str:
    """Canonical text, terms in monomial order, e.g. ``"2x - 3y + 5z"``."""
    pieces = []
    for m, c in f.terms().items():
        mono = _format_monomial(m)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        else:
            body = f"{mag}{mono}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces) if pieces else "0"
