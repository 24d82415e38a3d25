"""Exact rational matrices: rank, reduced row-echelon form, null space.

Rank is computed by fraction-free elimination on integer rows (each row is
scaled by the lcm of its denominators first, which does not change the row
space), with row contents divided out after every step to keep the
integers small.  Reduced echelon forms and kernels use plain ``Fraction``
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .polyring import Form

__all__ = ["Matrix", "rank", "row_reduce", "kernel_basis", "span_dimension", "DegreeMismatchError"]


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ValueError(f"row {i} has length {len(r)}, expected {cols}")
        return cls(len(rows), cols, tuple(Fraction(v) for r in rows for v in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> list[Fraction]:
        return list(self.entries[r * self.cols:(r + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(r) for r in range(self.rows)]

    def column(self, c: int) -> list[Fraction]:
        return [self.entries[r * self.cols + c] for r in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows([self.column(c) for c in range(self.cols)], self.rows)

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in r] for r in self.to_rows()]


def _integer_row(row: Iterable) -> list[int]:
    # works for int and Fraction entries alike
    row = list(row)
    den = 1
    for v in row:
        if v.denominator != 1:
            den = lcm(den, v.denominator)
    if den == 1:
        return [int(v.numerator) for v in row]
    return [v.numerator * (den // v.denominator) for v in row]


def _primitive(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [v // g for v in row]
    return row


def _rank_rows(rows: Iterable[Iterable]) -> int:
    """Rank of the row space spanned by ``rows`` over Q."""
    # pivots: column -> primitive integer row tail starting at that column
    pivots: dict[int, list[int]] = {}
    for raw in rows:
        v = _integer_row(raw)
        lead = 0
        while True:
            # v holds the tail of the row from column ``lead``; earlier entries are zero
            shift = next((c for c, a in enumerate(v) if a), None)
            if shift is None:
                break
            lead += shift
            v = v[shift:]
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = _primitive(v)
                break
            a, b = p[0], v[0]
            g = gcd(a, b)
            a, b = a // g, b // g
            v = _primitive([a * vi - b * pi for vi, pi in zip(v, p)])
    return len(pivots)


def rank(m: Matrix) -> int:
    """Exact rank over Q."""
    return _rank_rows(m.row(r) for r in range(m.rows))


def row_reduce(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and the (strictly increasing) pivot columns."""
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        # largest-magnitude entry in the column; any nonzero pivot is exact
        best = None
        for i in range(r, m.rows):
            if a[i][c] and (best is None or abs(a[i][c]) > abs(a[best][c])):
                best = i
        if best is None:
            continue
        a[r], a[best] = a[best], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix.from_rows(a, m.cols), pivots


def kernel_basis(m: Matrix) -> list[list[Fraction]]:
    """Basis of the right null space ``{v : m v = 0}``, one vector per free column."""
    ech, pivots = row_reduce(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -ech[r, free]
        basis.append(v)
    return basis


class DegreeMismatchError(ValueError):
    pass


def span_dimension(forms: Sequence[Form], d: int) -> int:
    """Dimension of the span of ``forms`` inside the degree-``d`` piece."""
    for i, f in enumerate(forms):
        if f.degree != d:
            raise DegreeMismatchError(f"form {i} ({f}) has degree {f.degree}, expected {d}")
    return _rank_rows(f.coeffs for f in forms)
