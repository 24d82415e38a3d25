"""Which generic degree ``d`` plane curves contain a star configuration ``X(l)``.

The answer is yes exactly for ``l = 2, d >= 1``; ``l = 3, d >= 2``;
``l = 4, d >= 3``; ``l = 5, d >= 5``.  Each cell is tagged with the
argument that settles it, and :func:`cross_validate` re-derives the yes
cells with the rank machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from . import cubic
from .star import contains_star, random_curve_through
from .tangent import QUARTIC_WITNESS, QUINTIC_WITNESS, dominance_check

__all__ = [
    "Verdict",
    "REASONS",
    "degree_bound",
    "dimension_count",
    "answer",
    "cross_validate",
    "classification_table",
]

DEGREE_BOUND = "degree-bound"
DIMENSION_COUNT = "dimension-count"
LUROTH = "luroth"
TRIVIAL_SMALL_L = "trivial-small-l"
CERTIFIED_RANK = "certified-rank"
GROUP_LAW = "group-law"
REASONS = (DEGREE_BOUND, DIMENSION_COUNT, LUROTH, TRIVIAL_SMALL_L, CERTIFIED_RANK, GROUP_LAW)


@dataclass(frozen=True)
class Verdict:
    d: int
    l: int
    answer: bool
    reason: str
    evidence: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "l": self.l,
            "answer": "yes" if self.answer else "no",
            "reason": self.reason,
            "evidence": self.evidence,
        }


def _check_args(d: int, l: int) -> None:
    if l < 2 or d < 1:
        raise ValueError(f"need l >= 2 and d >= 1, got d={d}, l={l}")


def degree_bound(d: int, l: int) -> bool:
    """True when ``d < l - 1``: the ideal of ``X(l)`` has nothing in degree ``d``."""
    _check_args(d, l)
    return d < l - 1


def dimension_count(d: int, l: int) -> tuple[int, int, bool]:
    """Upper bound on ``dim Sigma_{d,l}``, ``dim P(S_d)``, and whether ``bound >= target``.

    Configurations form a ``2l``-dimensional family and each imposes
    ``C(l,2)`` conditions on curves, so the inequality reduces to
    ``2l - C(l,2) = l(5-l)/2 >= 0`` independently of ``d``.
    """
    _check_args(d, l)
    if d < l - 1:
        raise ValueError(f"dimension count needs d >= l-1, got d={d}, l={l}")
    target = comb(d + 2, 2) - 1
    sigma_bound = 2 * l + comb(d + 2, 2) - comb(l, 2) - 1
    return sigma_bound, target, sigma_bound >= target


def answer(d: int, l: int) -> Verdict:
    _check_args(d, l)
    if degree_bound(d, l):
        return Verdict(d, l, False, DEGREE_BOUND, {"generator_degree": l - 1})
    if l > 5:
        sigma, target, _ = dimension_count(d, l)
        return Verdict(d, l, False, DIMENSION_COUNT,
                       {"sigma_bound": sigma, "target": target, "excess": 2 * l - comb(l, 2)})
    if l in (2, 3):
        return Verdict(d, l, True, TRIVIAL_SMALL_L)
    if (d, l) == (4, 5):
        # Luroth quartics form a hypersurface (of degree 54) in the space of quartics
        return Verdict(d, l, False, LUROTH, {"luroth_hypersurface_degree": 54})
    if (d, l) == (3, 4):
        return Verdict(d, l, True, GROUP_LAW)
    return Verdict(d, l, True, CERTIFIED_RANK)


def classification_table(d_max: int, l_max: int, d_min: int = 1, l_min: int = 2) -> dict:
    return {(d, l): answer(d, l) for l in range(l_min, l_max + 1) for d in range(d_min, d_max + 1)}


class ValidationError(AssertionError):
    pass


def cross_validate(d: int, l: int, trials: int = 5, seed: int = 0, bound: int = 100) -> dict:
    """Check :func:`answer` against the computational machinery.

    Yes cells must certify through the rank test (the known witnesses are
    tried first for (4,4) and (5,5)); (3,4) also runs the cubic
    construction.  No cells with ``d >= l-1`` record the best rank seen,
    which can only corroborate.
    """
    verdict = answer(d, l)
    report = {"verdict": verdict.to_json(), "consistent": True}
    if d >= l - 1:
        witnesses = {(4, 4): [QUARTIC_WITNESS], (5, 5): [QUINTIC_WITNESS]}.get((d, l), [])
        check = dominance_check(d, l, trials, seed, bound, witnesses=witnesses)
        report["rank"] = check.to_json()
        if verdict.answer and not check.certified:
            report["consistent"] = False
        if not verdict.answer and check.certified:
            report["consistent"] = False
    if (d, l) == (3, 4):
        built = cubic.construct_x4(cubic.DEFAULT_CURVE, cubic.DEFAULT_P1, cubic.DEFAULT_P2)
        on_curve = all(cubic.on_curve(built.curve, P) for P in built.points.values())
        through = contains_star(cubic.DEFAULT_CURVE.equation, built.star)
        other = contains_star(random_curve_through(built.star, 3, seed, bound), built.star)
        report["group_law"] = {"points_on_curve": on_curve, "curve_contains_star": through,
                               "random_cubic_through_star": other}
        report["consistent"] = report["consistent"] and on_curve and through and other
    if not report["consistent"]:
        raise ValidationError(f"cross-validation failed at (d, l) = ({d}, {l}): {report}")
    return report
