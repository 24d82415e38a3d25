"""Evaluation-matrix arguments for l = 4 (d >= 5) and l = 5 (d >= 6).

Forms of degree ``d`` are independent modulo ``(Lhat_1..Lhat_l)`` exactly
when their value vectors at the ``C(l,2)`` configuration points are
independent, because the coordinate ring has dimension ``C(l,2)`` in those
degrees.  So ``I_d = S_d`` follows once ``C(l,2)`` forms from ``I_d`` give
a full-rank evaluation matrix.  The multipliers ``M_i`` are interpolated
to vanish at prescribed points only, which forces the sparse patterns
checked below.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .linalg import Matrix, kernel_basis, rank
from .polyring import Form, evaluate, monomial_basis, mul, num_monomials
from .seeding import derive_seed
from .star import ProjPoint, StarConfig, random_star
from .tangent import TangentSystem, build_system, tangent_dimension

__all__ = [
    "EvalMatrix",
    "Check",
    "Report",
    "InterpolationError",
    "ReplicationError",
    "evaluation_matrix",
    "interpolate",
    "q_zero_pattern",
    "check_q_values",
    "replicate_l4",
    "replicate_l5",
    "L4_Q_PATTERN",
    "L4_EXTRA_PATTERN",
    "L5_FORMS",
    "L5_PATTERN",
]


@dataclass(frozen=True)
class EvalMatrix:
    row_labels: tuple[tuple[int, int], ...]
    col_labels: tuple[str, ...]
    entries: Matrix

    def __post_init__(self):
        if self.entries.rows != len(self.row_labels) or self.entries.cols != len(self.col_labels):
            raise ValueError("label counts do not match matrix shape")

    def pattern(self) -> tuple[str, ...]:
        """One string per row, ``*`` for a nonzero entry and ``0`` otherwise."""
        return tuple(
            "".join("*" if v else "0" for v in self.entries.row(r))
            for r in range(self.entries.rows)
        )

    def rank(self) -> int:
        return rank(self.entries)

    def to_text(self) -> str:
        width = max(5, *(len(c) for c in self.col_labels))
        head = "        " + "".join(c.rjust(width + 1) for c in self.col_labels)
        lines = [head, "-" * len(head)]
        for label, row in zip(self.row_labels, self.pattern()):
            name = f"p_{label[0]},{label[1]}"
            lines.append(f"{name:<8}" + "".join(ch.rjust(width + 1) for ch in row))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "rows": [f"{i},{j}" for i, j in self.row_labels],
            "cols": list(self.col_labels),
            "entries": self.entries.to_json(),
            "pattern": list(self.pattern()),
        }


def evaluation_matrix(
    X: StarConfig, forms: Sequence[Form], labels: Sequence[str] | None = None
) -> EvalMatrix:
    pairs = X.pairs()
    if labels is None:
        labels = [f"f{c + 1}" for c in range(len(forms))]
    rows = [[evaluate(f, X.points[p]) for f in forms] for p in pairs]
    return EvalMatrix(tuple(pairs), tuple(labels), Matrix.from_rows(rows, len(forms)))


class InterpolationError(ValueError):
    pass


def interpolate(
    d: int,
    zeros: Sequence[ProjPoint],
    nonzeros: Sequence[ProjPoint],
    seed: int,
    bound: int = 10,
    max_tries: int = 50,
) -> Form:
    """Random degree-``d`` form vanishing on ``zeros`` and at none of ``nonzeros``.

    Samples integer combinations of a basis of the forms through ``zeros``.
    """
    basis = monomial_basis(d)
    if zeros:
        conditions = Matrix.from_rows(
            [[evaluate(Form.from_terms(d, {m: 1}), p) for m in basis] for p in zeros],
            len(basis),
        )
        kernel = kernel_basis(conditions)
    else:
        kernel = [[Fraction(int(i == j)) for j in range(len(basis))] for i in range(len(basis))]
    if not kernel:
        raise InterpolationError(f"no nonzero degree {d} form vanishes at all {len(zeros)} points")
    rng = random.Random(derive_seed(seed, "interpolate", d, len(zeros), len(nonzeros)))
    for _ in range(max_tries):
        weights = [rng.randint(-bound, bound) for _ in kernel]
        coeffs = [sum(w * v[c] for w, v in zip(weights, kernel)) for c in range(len(basis))]
        f = Form(d, tuple(Fraction(c) for c in coeffs))
        if f.is_zero():
            continue
        if all(evaluate(f, p) != 0 for p in nonzeros):
            if any(evaluate(f, p) != 0 for p in zeros):
                raise AssertionError("interpolated form misses a prescribed zero")
            return f
    raise InterpolationError(
        f"every sampled degree {d} form through the {len(zeros)} zeros also vanished "
        f"at a forbidden point ({max_tries} tries)"
    )


# Expected nonzero patterns; rows in pair order p_12, p_13, ..., one char per column.
# l = 4, columns Q_1..Q_4, with M_2(p_23) = M_3(p_34) = M_4(p_24) = 0.
L4_Q_PATTERN = ("**00", "*0*0", "*00*", "0*00", "000*", "00*0")
# l = 4, columns L_1 Q_3 and L_1 Q_2.
L4_EXTRA_PATTERN = ("00", "00", "00", "0*", "00", "*0")

# l = 5: the ten forms (multiplier index, Q index), 1-based.
L5_FORMS = ((5, 1), (2, 1), (1, 2), (3, 2), (2, 3), (4, 3), (3, 4), (5, 4), (4, 5), (1, 5))
L5_PATTERN = (
    "000*000000",
    "0000**0000",
    "**0000**00",
    "0*00000000",
    "00000*0000",
    "00**00**00",
    "00**000000",
    "0000000*00",
    "0000**00**",
    "000000000*",
)
# l = 5 multiplier zeros: M_1(p_15) = M_4(p_34) = M_5(p_45) = 0,
# M_2(p_12) = M_2(p_25) = M_3(p_13) = M_3(p_23) = 0.
L5_ZEROS = {1: [(1, 5)], 2: [(1, 2), (2, 5)], 3: [(1, 3), (2, 3)], 4: [(3, 4)], 5: [(4, 5)]}
L4_ZEROS = {1: [], 2: [(2, 3)], 3: [(3, 4)], 4: [(2, 4)]}


def q_zero_pattern(l: int) -> tuple[str, ...]:
    """Generic pattern of the ``Q`` columns: ``Q_i(p_jk) != 0`` iff ``i`` is ``j`` or ``k``."""
    return tuple(
        "".join("*" if i in pair else "0" for i in range(1, l + 1))
        for pair in combinations(range(1, l + 1), 2)
    )


def check_q_values(system: TangentSystem, X: StarConfig) -> bool:
    """Every ``Q_i(p_jk)`` equals its closed form.

    Zero when ``i`` is not in ``{j, k}``; otherwise ``M_m(p) * Lhat_{i,m}(p)``
    where ``m`` is the other index of the pair.
    """
    for (j, k), p in X.points.items():
        for i in range(1, system.l + 1):
            value = evaluate(system.Q[i - 1], p)
            if i not in (j, k):
                expected = Fraction(0)
            else:
                m = k if i == j else j
                expected = evaluate(system.M[m - 1], p) * evaluate(system.lhat2(i, m), p)
            if value != expected:
                return False
    return True


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    l: int
    d: int
    seed: int
    system: TangentSystem | None = None
    matrices: dict[str, EvalMatrix] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    rank: int | None = None
    expected_rank: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return passed

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "d": self.d,
            "seed": self.seed,
            "ok": self.ok,
            "rank": self.rank,
            "expected_rank": self.expected_rank,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "matrices": {k: m.to_json() for k, m in self.matrices.items()},
            "system": self.system.to_json() if self.system else None,
            "notes": self.notes,
        }

    def to_text(self) -> str:
        out = [f"l={self.l} d={self.d} seed={self.seed}"]
        for name, m in self.matrices.items():
            out += ["", name, m.to_text()]
        out.append("")
        for c in self.checks:
            status = "ok  " if c.passed else "FAIL"
            out.append(f"[{status}] {c.name}" + (f"  ({c.detail})" if c.detail else ""))
        out += [f"note: {n}" for n in self.notes]
        out.append(f"evaluation rank {self.rank} / {self.expected_rank}: {'OK' if self.ok else 'FAILED'}")
        return "\n".join(out)


class ReplicationError(AssertionError):
    def __init__(self, report: Report):
        failed = ", ".join(c.name for c in report.checks if not c.passed)
        super().__init__(f"replication failed for l={report.l}, d={report.d}: {failed}")
        self.report = report


def _prescribed_multipliers(X: StarConfig, e: int, zeros: dict, seed: int) -> list[Form]:
    M = []
    for i in range(1, X.l + 1):
        z = [X.points[p] for p in zeros[i]]
        nz = [X.points[p] for p in X.pairs() if p not in zeros[i]]
        M.append(interpolate(e, z, nz, derive_seed(seed, "M", i)))
    return M


def replicate_l4(d: int, seed: int = 0, bound: int = 100, strict: bool = True) -> Report:
    """Rank-6 evaluation argument for four lines and ``d >= 5``."""
    if d < 5:
        raise ValueError(f"the l=4 evaluation argument needs d >= 5 (deg M_i >= 2), got d={d}")
    report = Report(4, d, seed, expected_rank=6)
    X = random_star(4, derive_seed(seed, "replicate", 4, d), bound)
    M = _prescribed_multipliers(X, d - 3, L4_ZEROS, seed)
    system = build_system(X.forms, M, d)
    report.system = system
    Q = system.Q

    q_mat = evaluation_matrix(X, Q, [f"Q{i}" for i in range(1, 5)])
    report.matrices["Q evaluations"] = q_mat
    report.check("Q_i(p_jk) = 0 for i not in {j,k}, closed-form values", check_q_values(system, X))
    report.check("Q pattern under prescribed zeros", q_mat.pattern() == L4_Q_PATTERN,
                 " ".join(q_mat.pattern()))
    report.check("Q evaluation rank 4", q_mat.rank() == 4, f"rank {q_mat.rank()}")

    N = [interpolate(1, [], X.point_list(), derive_seed(seed, "N", i)) for i in range(1, 5)]
    nq = [mul(n, q) for n, q in zip(N, Q)]
    nq_mat = evaluation_matrix(X, nq, [f"N{i}Q{i}" for i in range(1, 5)])
    report.matrices["N_i Q_i evaluations"] = nq_mat
    report.check("N_i Q_i keep the Q pattern", nq_mat.pattern() == L4_Q_PATTERN,
                 " ".join(nq_mat.pattern()))

    L1 = system.L[0]
    extra = [mul(L1, Q[2]), mul(L1, Q[1])]
    extra_mat = evaluation_matrix(X, extra, ["L1Q3", "L1Q2"])
    report.matrices["extra forms"] = extra_mat
    report.check("L1Q3, L1Q2 pattern", extra_mat.pattern() == L4_EXTRA_PATTERN,
                 " ".join(extra_mat.pattern()))

    full = evaluation_matrix(X, nq + extra, list(nq_mat.col_labels) + list(extra_mat.col_labels))
    report.matrices["all six forms"] = full
    report.rank = full.rank()
    report.check("six forms have rank 6", report.rank == 6, f"rank {report.rank}")
    dim = tangent_dimension(system)
    report.check("I_d = S_d by direct Macaulay rank", dim == num_monomials(d),
                 f"{dim}/{num_monomials(d)}")
    if strict and not report.ok:
        raise ReplicationError(report)
    return report


def replicate_l5(d: int, seed: int = 0, bound: int = 100, strict: bool = True) -> Report:
    """Rank-10 evaluation argument for five lines and ``d >= 6``."""
    if d < 6:
        raise ValueError(
            f"the l=5 evaluation argument needs d >= 6 (deg M_i >= 2), got d={d}; "
            "d=5 is settled by the explicit quintic witness instead"
        )
    report = Report(5, d, seed, expected_rank=10)
    X = random_star(5, derive_seed(seed, "replicate", 5, d), bound)
    M = _prescribed_multipliers(X, d - 4, L5_ZEROS, seed)
    system = build_system(X.forms, M, d)
    report.system = system

    q_mat = evaluation_matrix(X, system.Q, [f"Q{i}" for i in range(1, 6)])
    report.matrices["Q evaluations"] = q_mat
    report.check("Q_i(p_jk) = 0 for i not in {j,k}, closed-form values", check_q_values(system, X))

    forms = [mul(system.L[a - 1], system.Q[b - 1]) for a, b in L5_FORMS]
    mat = evaluation_matrix(X, forms, [f"L{a}Q{b}" for a, b in L5_FORMS])
    report.matrices["ten forms"] = mat
    report.check("ten-form pattern", mat.pattern() == L5_PATTERN, " ".join(mat.pattern()))
    report.rank = mat.rank()
    report.check("ten forms have rank 10", report.rank == 10, f"rank {report.rank}")

    # the starred entry (p_35, L4Q5) is L_4 M_3 Lhat_{5,3} at p_35, so it needs
    # M_3(p_35) != 0; M_1 at p_35 never enters the matrix
    p35 = X.points[(3, 5)]
    report.check("M_3(p_35) != 0", evaluate(M[2], p35) != 0)
    report.notes.append(
        "M_3(p_35) != 0 is what the (p_35, L4Q5) entry requires; M_1(p_35) does not "
        "appear in any entry and is only imposed here as part of 'no other vanishing'"
    )
    dim = tangent_dimension(system)
    report.check("I_d = S_d by direct Macaulay rank", dim == num_monomials(d),
                 f"{dim}/{num_monomials(d)}")
    if strict and not report.ok:
        raise ReplicationError(report)
    return report
