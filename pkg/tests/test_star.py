from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from starconfig.linalg import Matrix, rank, span_dimension
from starconfig.polyring import Form, evaluate, monomial_basis, parse_form, product_excluding
from starconfig.star import (
    ConcurrentLinesError,
    DegreeTooSmallError,
    DuplicateLineError,
    Line,
    ProjPoint,
    build_star,
    contains_star,
    hilbert_function_computed,
    hilbert_function_formula,
    ideal_dimension,
    ideal_generators,
    intersect_lines,
    random_curve_through,
    random_star,
)


def L(text):
    return Line(parse_form(text))


def hf_by_points(X, t):
    """Independent route: HF(t) is the rank of evaluating all degree-t monomials at the points."""
    rows = [[evaluate(Form.from_terms(t, {m: 1}), p) for m in monomial_basis(t)] for p in X.point_list()]
    return rank(Matrix.from_rows(rows, len(monomial_basis(t))))


EXAMPLE_LINES = ["x", "y", "z", "x+y+z"]


def test_intersect_lines_examples():
    assert intersect_lines(L("x"), L("y")) == ProjPoint(0, 0, 1)
    assert intersect_lines(L("x"), L("x+y+z")) == ProjPoint(0, 1, -1)
    assert intersect_lines(L("x"), L("x+z")) == ProjPoint(0, 1, 0)


def test_intersect_identical_lines():
    with pytest.raises(DuplicateLineError):
        intersect_lines(L("x+y"), L("2x+2y"))


def test_projpoint_normalization():
    p = ProjPoint(0, 3, -6)
    assert p.coords == (0, 1, -2)
    assert ProjPoint(2, 4, 6) == ProjPoint(Fraction(1, 2), 1, Fraction(3, 2))
    with pytest.raises(ValueError):
        ProjPoint(0, 0, 0)


def test_line_normalization():
    assert L("2x-3y+5z").coeffs == (1, Fraction(-3, 2), Fraction(5, 2))
    assert L("-y+z").coeffs == (0, 1, -1)
    with pytest.raises(ValueError):
        Line(parse_form("x^2"))


def test_build_star_example_configuration():
    X = build_star([parse_form(t) for t in EXAMPLE_LINES])
    assert X.l == 4 and len(X.points) == 6
    pts = set(X.points.values())
    assert {ProjPoint(0, 0, 1), ProjPoint(0, 1, 0), ProjPoint(1, 0, 0)} <= pts
    assert X.points[(1, 4)] == ProjPoint(0, 1, -1)


def test_build_star_concurrent():
    with pytest.raises(ConcurrentLinesError, match=r"lines 1,2,3 meet in a point at \[0:0:1\]") as err:
        build_star([L("x"), L("y"), L("x+y")])
    assert err.value.indices == (1, 2, 3)


def test_build_star_duplicate():
    with pytest.raises(DuplicateLineError) as err:
        build_star([L("x"), L("x")])
    assert err.value.indices == (1, 2)


def test_build_star_needs_two_lines():
    with pytest.raises(ValueError):
        build_star([L("x")])


def test_random_star():
    X = random_star(5, seed=1)
    assert X.l == 5 and len(set(X.points.values())) == 10
    assert random_star(5, seed=1) == X
    assert random_star(5, seed=1).points == X.points
    X2 = random_star(2, seed=9)
    assert len(X2.points) == 1


def test_random_star_retry_cap():
    # with bound 1 there are few lines; X(9) cannot exist among them in general position
    with pytest.raises(ValueError, match="attempts"):
        random_star(9, seed=0, bound=1)


def test_ideal_generators():
    X = build_star([L("x"), L("y"), L("z")])
    assert ideal_generators(X) == [parse_form("yz"), parse_form("xz"), parse_form("xy")]
    X = build_star([parse_form(t) for t in EXAMPLE_LINES])
    L1, L2, L3, L4 = X.forms
    assert ideal_generators(X) == [L2 * L3 * L4, L1 * L3 * L4, L1 * L2 * L4, L1 * L2 * L3]
    for g in ideal_generators(X):
        assert contains_star(g, X)


def test_hilbert_formula():
    assert hilbert_function_formula(5, 2) == 6
    assert hilbert_function_formula(5, 3) == 10
    assert hilbert_function_formula(2, 0) == 1
    with pytest.raises(ValueError):
        hilbert_function_formula(1, 0)


def test_hilbert_computed_examples():
    X = build_star([parse_form(t) for t in EXAMPLE_LINES])
    assert hilbert_function_computed(X, 2) == 6
    assert ideal_dimension(X, 2) == 0
    assert hilbert_function_computed(random_star(2, 0), 5) == 1


@pytest.mark.parametrize("l", range(2, 8))
def test_hilbert_function_both_routes(l):
    for seed in range(2):
        X = random_star(l, seed)
        for t in range(11):
            expected = hilbert_function_formula(l, t)
            assert hf_by_points(X, t) == expected
            assert hilbert_function_computed(X, t) == expected


@pytest.mark.parametrize("l", range(3, 8))
def test_nothing_below_generator_degree(l):
    X = random_star(l, seed=4)
    for d in range(l - 1):
        assert ideal_dimension(X, d) == 0


@pytest.mark.parametrize("l", range(2, 8))
def test_each_point_on_exactly_two_lines(l):
    X = random_star(l, seed=l)
    for (i, j), p in X.points.items():
        on = [k + 1 for k, ln in enumerate(X.lines) if ln.contains(p)]
        assert on == [i, j]


@pytest.mark.parametrize("l", range(2, 8))
def test_generators_independent(l):
    X = random_star(l, seed=2 * l)
    assert span_dimension(ideal_generators(X), l - 1) == l


def test_contains_star():
    X = build_star([parse_form(t) for t in EXAMPLE_LINES])
    assert contains_star(product_excluding(X.forms), X)
    # a conic through five of the six points cannot contain all six
    assert not contains_star(parse_form("x^2 + y^2 + z^2"), X)
    F = random_curve_through(X, 3, seed=1)
    assert F.degree == 3 and contains_star(F, X)
    # x^3 is nonzero at [1:0:0], the meeting point of y and z
    assert not contains_star(F + parse_form("x^3"), X)


def test_random_curve_through_degree_bound():
    X5 = random_star(5, seed=0)
    with pytest.raises(DegreeTooSmallError):
        random_curve_through(X5, 3, seed=0)
    Q = random_curve_through(X5, 4, seed=0)
    assert Q.degree == 4 and contains_star(Q, X5)
    assert random_curve_through(X5, 4, seed=0) == Q


def test_star_json():
    X = build_star([L("x"), L("y"), L("z")])
    data = X.to_json()
    assert data["lines"][0] == ["1", "0", "0"]
    assert data["points"]["1,2"] == ["0", "0", "1"]


def test_pairs_order():
    X = random_star(4, seed=0)
    assert X.pairs() == list(combinations(range(1, 5), 2))
    assert comb(4, 2) == len(X.point_list())
