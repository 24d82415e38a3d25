"""Chord-tangent group law on ``y^2 z = x^3 + a x z^2 + b z^3`` over Q.

The identity is the flex ``[0:1:0]``.  Any four lines built from a
2-torsion point ``p2`` and a generic ``p1`` by the chord construction
below meet pairwise in six points of the cubic, so every smooth cubic
carries an ``X(4)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from .polyring import Form
from .star import ProjPoint, StarConfig, StarConfigError, build_star, line_through

__all__ = [
    "WeierstrassCurve",
    "CurvePoint",
    "INFINITY",
    "CurveError",
    "on_curve",
    "neg",
    "chord_third",
    "add",
    "multiply",
    "two_torsion",
    "construct_x4",
    "X4Construction",
    "DEFAULT_CURVE",
    "DEFAULT_P1",
    "DEFAULT_P2",
]


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassCurve:
    a: Fraction
    b: Fraction

    def __init__(self, a, b):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise CurveError(f"y^2 = x^3 + {self.a}x + {self.b} is singular")

    @property
    def equation(self) -> Form:
        """``y^2 z - x^3 - a x z^2 - b z^3`` as a cubic form."""
        return Form.from_terms(
            3, {(0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): -self.a, (0, 0, 3): -self.b}
        )

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}


@dataclass(frozen=True)
class CurvePoint:
    """An affine point ``(x, y)``, or the point at infinity when ``x`` is None."""

    x: Fraction | None = None
    y: Fraction | None = None

    @classmethod
    def affine(cls, x, y) -> "CurvePoint":
        return cls(Fraction(x), Fraction(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def projective(self) -> ProjPoint:
        if self.is_infinity:
            return ProjPoint(0, 1, 0)
        return ProjPoint(self.x, self.y, 1)

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"

    def to_json(self):
        return "infinity" if self.is_infinity else [str(self.x), str(self.y)]


INFINITY = CurvePoint()


def on_curve(C: WeierstrassCurve, P: CurvePoint) -> bool:
    if P.is_infinity:
        return True
    return P.y**2 == P.x**3 + C.a * P.x + C.b


def neg(P: CurvePoint) -> CurvePoint:
    return P if P.is_infinity else CurvePoint(P.x, -P.y)


def chord_third(C: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Third intersection of the line ``PQ`` (the tangent if ``P == Q``) with ``C``."""
    for R in (P, Q):
        if not on_curve(C, R):
            raise CurveError(f"{R} is not on the curve")
    if P.is_infinity and Q.is_infinity:
        return INFINITY  # flex: the tangent meets with multiplicity 3
    if P.is_infinity or Q.is_infinity:
        return neg(Q if P.is_infinity else P)  # vertical line
    if P.x == Q.x:
        if P.y != Q.y or P.y == 0:
            return INFINITY  # vertical chord, or vertical tangent at 2-torsion
        slope = (3 * P.x**2 + C.a) / (2 * P.y)
    else:
        slope = (Q.y - P.y) / (Q.x - P.x)
    # x-coordinates of the three intersections sum to slope^2
    x3 = slope**2 - P.x - Q.x
    return CurvePoint(x3, P.y + slope * (x3 - P.x))


def add(C: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return chord_third(C, chord_third(C, P, Q), INFINITY)


def multiply(C: WeierstrassCurve, n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return multiply(C, -n, neg(P))
    result, addend = INFINITY, P
    while n:
        if n & 1:
            result = add(C, result, addend)
        addend = add(C, addend, addend)
        n >>= 1
    return result


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [k for k in range(1, isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    return Fraction(n, d) if n * n == q.numerator and d * d == q.denominator else None


def two_torsion(C: WeierstrassCurve) -> list[CurvePoint]:
    """Infinity plus ``(e, 0)`` for each rational root ``e`` of ``x^3 + a x + b``, sorted by ``e``."""
    # x = u/D turns the cubic into the monic integer cubic u^3 + aD^2 u + bD^3
    D = lcm(C.a.denominator, C.b.denominator)
    c1, c0 = int(C.a * D**2), int(C.b * D**3)
    if c0 == 0:
        root = 0
    else:
        root = next(
            (s * u for u in _divisors(c0) for s in (1, -1) if (s * u) ** 3 + c1 * s * u + c0 == 0),
            None,
        )
    if root is None:
        return [INFINITY]
    e = Fraction(root, D)
    # remaining quadratic: x^2 + e x + (e^2 + a)
    roots = {e}
    s = _rational_sqrt(e**2 - 4 * (e**2 + C.a))
    if s is not None:
        roots |= {(-e + s) / 2, (-e - s) / 2}
    return [INFINITY] + [CurvePoint(r, Fraction(0)) for r in sorted(roots)]


@dataclass(frozen=True)
class X4Construction:
    curve: WeierstrassCurve
    star: StarConfig
    # "p0", "p1", "p2", "p1+p2", "p3", "p4" -> point on the curve
    points: dict[str, CurvePoint]
    # which pair of lines (1-based) meets at each labelled point
    incidence: dict[str, tuple[int, int]]

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_json(),
            "lines": [str(ln) for ln in self.star.lines],
            "star": self.star.to_json(),
            "points": {k: p.to_json() for k, p in self.points.items()},
            "incidence": {k: f"{i},{j}" for k, (i, j) in self.incidence.items()},
        }


DEFAULT_CURVE = WeierstrassCurve(-25, 0)
DEFAULT_P1 = CurvePoint.affine(-4, 6)
DEFAULT_P2 = CurvePoint.affine(0, 0)


def construct_x4(C: WeierstrassCurve, p1: CurvePoint, p2: CurvePoint) -> X4Construction:
    """Four lines on ``C`` whose six pairwise intersections all lie on ``C``.

    ``l1 = p1 p2`` (third point p3), ``l2 = p3 p0`` (through p1+p2),
    ``l3 = (p1+p2) p2`` (third point p4), ``l4 = p4 p0`` (through p4 + p2 = p1).
    """
    for name, P in (("p1", p1), ("p2", p2)):
        if not on_curve(C, P):
            raise CurveError(f"{name} = {P} is not on the curve")
    if p2.is_infinity or add(C, p2, p2) != INFINITY:
        raise CurveError(f"p2 = {p2} must be a point of order exactly 2")
    if add(C, p1, p1) == INFINITY:
        raise CurveError(f"p1 = {p1} is 2-torsion; pick a generic point")

    p0 = INFINITY
    p3 = chord_third(C, p1, p2)
    s = chord_third(C, p3, p0)
    p4 = chord_third(C, s, p2)
    if chord_third(C, p4, p0) != p1:
        raise AssertionError("construction did not close up at p1")
    points = {"p0": p0, "p1": p1, "p2": p2, "p1+p2": s, "p3": p3, "p4": p4}
    if len({P for P in points.values()}) != 6:
        raise StarConfigError(f"degenerate choice of p1: labelled points are not distinct ({p1})")

    proj = {k: P.projective() for k, P in points.items()}
    lines = [
        line_through(proj["p1"], proj["p2"]),
        line_through(proj["p3"], proj["p0"]),
        line_through(proj["p1+p2"], proj["p2"]),
        line_through(proj["p4"], proj["p0"]),
    ]
    star = build_star(lines)
    incidence = {"p3": (1, 2), "p2": (1, 3), "p1": (1, 4), "p1+p2": (2, 3), "p0": (2, 4), "p4": (3, 4)}
    for name, pair in incidence.items():
        if star.points[pair] != proj[name]:
            raise AssertionError(f"lines {pair} meet at {star.points[pair]}, expected {name}")
    return X4Construction(C, star, points, incidence)
