"""The tangent ideal of the map ``(L, M) -> sum M_i Lhat_i`` and the rank test.

Given linear forms ``L_1..L_l`` and forms ``M_1..M_l`` of degree ``d-l+1``,
the ideal ``I = (Lhat_1..Lhat_l, Q_1..Q_l)`` with
``Q_i = sum_{j != i} M_j Lhat_{i,j}`` has ``I_d`` equal to the tangent space
of the image at ``sum M_i Lhat_i``.  ``dim I_d = dim S_d`` at a single
sample proves that the generic degree ``d`` curve contains an ``X(l)``
(dimension can only drop on a closed subset).  A smaller value proves
nothing, which is why the two outcomes get different labels.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .linalg import span_dimension
from .polyring import (
    Form,
    X,
    Y,
    Z,
    format_form,
    monomial_multiples,
    mul,
    num_monomials,
    parse_form,
    product_excluding,
    random_form,
    zero,
)
from .seeding import derive_seed
from .star import build_star, random_star

__all__ = [
    "TangentSystem",
    "DominanceVerdict",
    "CERTIFIED_YES",
    "EVIDENCE_NO",
    "QUARTIC_WITNESS",
    "QUINTIC_WITNESS",
    "build_system",
    "random_system",
    "tangent_forms",
    "tangent_dimension",
    "deficiency",
    "dominance_check",
]

CERTIFIED_YES = "certified-yes"
EVIDENCE_NO = "evidence-no"

# Explicit witnesses with I_d = S_d: (lines, multipliers) for (d, l) = (4, 4) and (5, 5).
QUARTIC_WITNESS = (
    ["x", "y", "z", "x+y+z"],
    ["x+y-z", "-x+2y+2z", "2x-y-z", "x+y+2z"],
)
QUINTIC_WITNESS = (
    ["x", "y", "z", "x+y+z", "2x-3y+5z"],
    ["x+y-z", "-x+2y+2z", "2x-y-z", "3x+y-z", "4x-4y+3z"],
)


@dataclass(frozen=True)
class TangentSystem:
    d: int
    l: int
    L: tuple[Form, ...]
    M: tuple[Form, ...]
    Lhat: tuple[Form, ...]
    # keyed by 1-based (i, j), i < j; Lhat2[(i, j)] omits both L_i and L_j
    Lhat2: dict[tuple[int, int], Form] = field(compare=False)
    Q: tuple[Form, ...]

    def lhat2(self, i: int, j: int) -> Form:
        return self.Lhat2[(min(i, j), max(i, j))]

    @property
    def F(self) -> Form:
        """The curve ``sum M_i Lhat_i`` at which the tangent space is taken."""
        total = mul(self.M[0], self.Lhat[0])
        for m, g in zip(self.M[1:], self.Lhat[1:]):
            total = total + mul(m, g)
        return total

    def star(self):
        return build_star(self.L)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "l": self.l,
            "L": [format_form(f) for f in self.L],
            "M": [format_form(f) for f in self.M],
            "Q": [format_form(f) for f in self.Q],
        }


def _as_form(f, degree: int) -> Form:
    if isinstance(f, Form):
        return f
    f = parse_form(f)
    # a bare "0" parses as a constant; place it in the expected degree
    return zero(degree) if f.is_zero() and degree >= 0 else f


def build_system(L: Sequence, M: Sequence, d: int) -> TangentSystem:
    """Assemble ``Lhat_i``, ``Lhat_{i,j}`` and ``Q_i`` and check the per-index identity.

    ``L`` and ``M`` may be :class:`Form` objects or strings in the polynomial
    grammar.
    """
    L = tuple(_as_form(f, 1) for f in L)
    M = tuple(_as_form(f, d - len(L) + 1) for f in M)
    l = len(L)
    if l < 2:
        raise ValueError(f"need at least two linear forms, got {l}")
    if len(M) != l:
        raise ValueError(f"got {l} linear forms but {len(M)} multipliers")
    e = d - l + 1
    if e < 0:
        raise ValueError(f"d={d} is below l-1={l - 1}; multipliers would have negative degree")
    for i, f in enumerate(L, 1):
        if f.degree != 1:
            raise ValueError(f"L_{i} = {f} is not linear")
    for i, f in enumerate(M, 1):
        if f.degree != e:
            raise ValueError(f"M_{i} = {f} has degree {f.degree}, expected {e}")
    build_star(L)

    Lhat = tuple(product_excluding(L, [i]) for i in range(l))
    Lhat2 = {
        (i + 1, j + 1): product_excluding(L, [i, j]) for i, j in combinations(range(l), 2)
    }
    Q = []
    for i in range(1, l + 1):
        q = None
        for j in range(1, l + 1):
            if j == i:
                continue
            term = mul(M[j - 1], Lhat2[(min(i, j), max(i, j))])
            q = term if q is None else q + term
        Q.append(q)
    system = TangentSystem(d, l, L, M, Lhat, Lhat2, tuple(Q))

    F = system.F
    for i in range(l):
        if mul(L[i], system.Q[i]) + mul(M[i], Lhat[i]) != F:
            raise AssertionError(f"L_{i + 1} Q_{i + 1} + M_{i + 1} Lhat_{i + 1} != F")
    return system


def _random_multiplier(e: int, rng: random.Random, bound: int) -> Form:
    while True:
        f = random_form(e, rng.getrandbits(64), bound)
        if not f.is_zero():
            return f


def random_system(d: int, l: int, seed: int, bound: int = 100) -> TangentSystem:
    """A system on a random valid star configuration with random multipliers."""
    X_ = random_star(l, derive_seed(seed, "lines"), bound)
    rng = random.Random(derive_seed(seed, "multipliers", d, l, bound))
    M = [_random_multiplier(d - l + 1, rng, bound) for _ in range(l)]
    return build_system(X_.forms, M, d)


def tangent_forms(system: TangentSystem) -> list[Form]:
    """Degree-``d`` spanning set of ``I_d``: monomial multiples of each Lhat_i, and x,y,z times each Q_i."""
    e = system.d - system.l + 1
    forms = [m for g in system.Lhat for m in monomial_multiples(g, e)]
    forms += [mul(v, q) for q in system.Q for v in (X, Y, Z)]
    return forms


def tangent_dimension(system: TangentSystem) -> int:
    return span_dimension(tangent_forms(system), system.d)


def deficiency(system: TangentSystem) -> int:
    return num_monomials(system.d) - tangent_dimension(system)


@dataclass(frozen=True)
class DominanceVerdict:
    d: int
    l: int
    verdict: str
    dim: int
    dim_S_d: int
    trials: int
    witness: TangentSystem | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED_YES

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "l": self.l,
            "verdict": self.verdict,
            "dim": self.dim,
            "dim_S_d": self.dim_S_d,
            "trials": self.trials,
        }
        if self.witness is not None:
            out["witness"] = {
                "L": [format_form(f) for f in self.witness.L],
                "M": [format_form(f) for f in self.witness.M],
            }
        return out


def _trial(args) -> tuple[int, TangentSystem]:
    d, l, seed, bound, k = args
    system = random_system(d, l, derive_seed(seed, "trial", k), bound)
    return tangent_dimension(system), system


def dominance_check(
    d: int,
    l: int,
    trials: int = 5,
    seed: int = 0,
    bound: int = 100,
    witnesses: Sequence[tuple[Sequence, Sequence]] = (),
    workers: int = 1,
) -> DominanceVerdict:
    """Try explicit ``witnesses`` and then ``trials`` random systems.

    Returns ``certified-yes`` with the first full-rank system found (explicit
    witnesses first, then random trials by index) or ``evidence-no`` with
    the largest dimension seen.  Trial ``k`` uses seed
    ``derive_seed(seed, "trial", k)``, so the answer does not depend on
    ``workers``.
    """
    if l < 2:
        raise ValueError(f"need l >= 2, got {l}")
    if d < l - 1:
        raise ValueError(f"need d >= l-1, got d={d}, l={l}")
    if trials < 1 and not witnesses:
        raise ValueError("need at least one trial")
    target = num_monomials(d)
    best = -1
    count = 0

    for L, M in witnesses:
        system = build_system(L, M, d)
        count += 1
        dim = tangent_dimension(system)
        if dim == target:
            return DominanceVerdict(d, l, CERTIFIED_YES, dim, target, count, system)
        best = max(best, dim)

    jobs = [(d, l, seed, bound, k) for k in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial, jobs))
        for dim, system in results:
            count += 1
            if dim == target:
                return DominanceVerdict(d, l, CERTIFIED_YES, dim, target, count, system)
            best = max(best, dim)
    else:
        for job in jobs:
            dim, system = _trial(job)
            count += 1
            if dim == target:
                return DominanceVerdict(d, l, CERTIFIED_YES, dim, target, count, system)
            best = max(best, dim)
    return DominanceVerdict(d, l, EVIDENCE_NO, best, target, count)
