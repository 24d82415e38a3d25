"""Star configurations: the pairwise intersection points of lines in general position."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .linalg import span_dimension
from .polyring import (
    Form,
    evaluate,
    monomial_basis,
    monomial_multiples,
    mul,
    num_monomials,
    primitive,
    product_excluding,
)
from .seeding import derive_seed

__all__ = [
    "ProjPoint",
    "Line",
    "StarConfig",
    "StarConfigError",
    "DegreeTooSmallError",
    "DuplicateLineError",
    "ConcurrentLinesError",
    "intersect_lines",
    "line_through",
    "build_star",
    "random_star",
    "ideal_generators",
    "hilbert_function_formula",
    "hilbert_function_computed",
    "ideal_dimension",
    "contains_star",
    "random_curve_through",
]


def _normalize(coords: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    coords = tuple(Fraction(c) for c in coords)
    if len(coords) != 3:
        raise ValueError(f"expected three coordinates, got {len(coords)}")
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise ValueError("all coordinates are zero")
    return tuple(c / lead for c in coords)


def _cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _det3(u, v, w) -> Fraction:
    c = _cross(v, w)
    return u[0] * c[0] + u[1] * c[1] + u[2] * c[2]


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^2, scaled so its first nonzero coordinate is 1."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = coords[0]
        object.__setattr__(self, "coords", _normalize(coords))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


@dataclass(frozen=True)
class Line:
    """A line of P^2 given by a linear form with first nonzero coefficient 1."""

    form: Form

    def __init__(self, form):
        if not isinstance(form, Form):
            form = Form.from_coeffs(1, form)
        if form.degree != 1:
            raise ValueError(f"a line needs a linear form, got degree {form.degree}")
        object.__setattr__(self, "form", Form(1, _normalize(form.coeffs)))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self.form.coeffs

    def contains(self, p: ProjPoint) -> bool:
        return evaluate(self.form, p) == 0

    def __str__(self) -> str:
        return str(self.form)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


class StarConfigError(ValueError):
    pass


class DuplicateLineError(StarConfigError):
    def __init__(self, i: int, j: int):
        super().__init__(f"lines {i} and {j} coincide")
        self.indices = (i, j)


class ConcurrentLinesError(StarConfigError):
    def __init__(self, i: int, j: int, k: int, point: ProjPoint | None = None):
        where = f" at {point}" if point is not None else ""
        super().__init__(f"lines {i},{j},{k} meet in a point{where}")
        self.indices = (i, j, k)
        self.point = point


def intersect_lines(a: Line, b: Line) -> ProjPoint:
    c = _cross(a.coeffs, b.coeffs)
    if not any(c):
        raise DuplicateLineError(1, 2)
    return ProjPoint(c)


def line_through(p: ProjPoint, q: ProjPoint) -> Line:
    c = _cross(p.coords, q.coords)
    if not any(c):
        raise ValueError(f"points {p} and {q} coincide")
    return Line(Form(1, c))


@dataclass(frozen=True)
class StarConfig:
    """``l`` lines, no three concurrent, and their ``C(l,2)`` intersection points.

    Lines are numbered from 1, matching the usual ``p_{i,j}`` labels; the
    ``points`` mapping is keyed by pairs ``(i, j)`` with ``i < j``.
    """

    lines: tuple[Line, ...]
    points: dict[tuple[int, int], ProjPoint] = field(compare=False)

    @property
    def l(self) -> int:
        return len(self.lines)

    @property
    def forms(self) -> list[Form]:
        return [ln.form for ln in self.lines]

    def pairs(self) -> list[tuple[int, int]]:
        return list(combinations(range(1, self.l + 1), 2))

    def point_list(self) -> list[ProjPoint]:
        return [self.points[p] for p in self.pairs()]

    def to_json(self) -> dict:
        return {
            "lines": [ln.to_json() for ln in self.lines],
            "points": {f"{i},{j}": p.to_json() for (i, j), p in self.points.items()},
        }


def build_star(lines: Sequence) -> StarConfig:
    """Validate ``lines`` and compute all pairwise intersections."""
    lines = tuple(ln if isinstance(ln, Line) else Line(ln) for ln in lines)
    l = len(lines)
    if l < 2:
        raise StarConfigError(f"a star configuration needs at least 2 lines, got {l}")
    for i, j in combinations(range(l), 2):
        if lines[i] == lines[j]:
            raise DuplicateLineError(i + 1, j + 1)
    points = {}
    for i, j in combinations(range(l), 2):
        points[(i + 1, j + 1)] = intersect_lines(lines[i], lines[j])
    # three lines concur iff their coefficient vectors are dependent
    for i, j, k in combinations(range(l), 3):
        if _det3(lines[i].coeffs, lines[j].coeffs, lines[k].coeffs) == 0:
            raise ConcurrentLinesError(i + 1, j + 1, k + 1, points[(i + 1, j + 1)])
    return StarConfig(lines, points)


def random_star(l: int, seed: int, bound: int = 100, max_tries: int = 100) -> StarConfig:
    """A random valid ``X(l)`` from integer line coefficients in ``[-bound, bound]``."""
    if l < 2:
        raise StarConfigError(f"a star configuration needs at least 2 lines, got {l}")
    for attempt in range(max_tries):
        rng = random.Random(derive_seed(seed, "star", l, bound, attempt))
        coeffs = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(l)]
        if any(not any(c) for c in coeffs):
            continue
        try:
            return build_star([Line(c) for c in coeffs])
        except StarConfigError:
            continue
    raise StarConfigError(
        f"no valid X({l}) after {max_tries} attempts (seed={seed}, bound={bound})"
    )


def ideal_generators(X: StarConfig) -> list[Form]:
    """``Lhat_i``, the product of every line form except the ``i``-th."""
    forms = X.forms
    return [product_excluding(forms, [i]) for i in range(X.l)]


def hilbert_function_formula(l: int, t: int) -> int:
    if l < 2 or t < 0:
        raise ValueError(f"need l >= 2 and t >= 0, got l={l}, t={t}")
    return min(comb(t + 2, 2), comb(l, 2))


@lru_cache(maxsize=64)
def _integer_generators(lines: tuple[Line, ...]) -> tuple[Form, ...]:
    # rescaling a line does not change the ideal; integer lines keep the matrix small
    forms = [primitive(ln.form) for ln in lines]
    return tuple(product_excluding(forms, [i]) for i in range(len(forms)))


def ideal_dimension(X: StarConfig, t: int) -> int:
    """``dim (I_X)_t`` as the rank of the degree-``t`` Macaulay matrix of the generators."""
    e = t - (X.l - 1)
    if e < 0:
        return 0
    gens = _integer_generators(X.lines)
    return span_dimension([m for g in gens for m in monomial_multiples(g, e)], t)


def hilbert_function_computed(X: StarConfig, t: int) -> int:
    if t < 0:
        raise ValueError(f"need t >= 0, got {t}")
    return num_monomials(t) - ideal_dimension(X, t)


def contains_star(F: Form, X: StarConfig) -> bool:
    return all(evaluate(F, p) == 0 for p in X.point_list())


class DegreeTooSmallError(StarConfigError):
    pass


def random_curve_through(X: StarConfig, d: int, seed: int, bound: int = 100) -> Form:
    """``F = sum M_i Lhat_i`` with random ``M_i`` of degree ``d - l + 1``."""
    e = d - (X.l - 1)
    if e < 0:
        raise DegreeTooSmallError(
            f"no degree {d} curve contains an X({X.l}): generators have degree {X.l - 1}"
        )
    rng = random.Random(derive_seed(seed, "curve", X.l, d, bound))
    F = None
    for g in ideal_generators(X):
        M = Form.from_coeffs(e, [rng.randint(-bound, bound) for _ in monomial_basis(e)])
        term = mul(M, g)
        F = term if F is None else F + term
    return F
