from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starconfig.polyring import (
    Form,
    FormSyntaxError,
    NonHomogeneousError,
    X,
    Y,
    Z,
    const,
    evaluate,
    format_form,
    linear,
    monomial_basis,
    mul,
    parse_form,
    primitive,
    product_excluding,
    random_form,
    zero,
)


def test_monomial_basis_sizes():
    assert monomial_basis(0) == [(0, 0, 0)]
    assert len(monomial_basis(4)) == 15
    assert len(monomial_basis(10)) == 66


def test_monomial_basis_degree_two_layout():
    assert monomial_basis(2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


@pytest.mark.parametrize("d", range(8))
def test_monomial_basis_strictly_decreasing_grlex(d):
    basis = monomial_basis(d)
    assert len(basis) == (d + 2) * (d + 1) // 2
    assert all(sum(m) == d for m in basis)
    # within one degree grlex is lex on the exponent tuple
    assert all(a > b for a, b in zip(basis, basis[1:]))


def test_mul_examples():
    assert mul(X, Y) == parse_form("xy")
    assert mul(X + Y, X - Y) == parse_form("x^2 - y^2")
    f = parse_form("x^2 + 3yz")
    assert mul(f, zero(3)) == zero(5)


def test_evaluate_examples():
    assert evaluate(X, (1, 0, 0)) == 1
    assert evaluate(parse_form("x+y+z"), (1, -1, 0)) == 0
    assert evaluate(parse_form("xyz"), (1, 2, 3)) == 6


def test_parse_linear_form():
    f = parse_form("2x-3y+5z")
    assert f == linear(2, -3, 5)
    assert f.degree == 1


def test_parse_quadric_and_rationals():
    f = parse_form("x^2+y^2+z^2")
    assert f.degree == 2
    assert f.terms() == {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}
    assert parse_form("3/4xy - z^2").terms() == {(1, 1, 0): Fraction(3, 4), (0, 0, 2): -1}
    assert parse_form("(x+y)^2") == parse_form("x^2 + 2xy + y^2")
    assert parse_form("2*x**2*y") == parse_form("2x^2y")


def test_parse_rejects_non_homogeneous():
    with pytest.raises(NonHomogeneousError) as err:
        parse_form("x+y^2")
    assert err.value.degrees == (1, 2)
    assert "1" in str(err.value) and "2" in str(err.value)


@pytest.mark.parametrize("text,pos", [("x + $y", 4), ("x +", 3), ("2x - (y", 7), ("x^y", 2), ("", 0)])
def test_parse_syntax_errors_report_position(text, pos):
    with pytest.raises(FormSyntaxError) as err:
        parse_form(text)
    assert err.value.position == pos


def test_parse_zero_with_degree_hint():
    assert parse_form("0", degree=3) == zero(3)
    assert parse_form("x - x", degree=1) == zero(1)


def test_format_canonical():
    assert format_form(parse_form("5z - 3y + 2x")) == "2x - 3y + 5z"
    assert format_form(parse_form("-x^2y + 1/2z^3")) == "-x^2y + 1/2z^3"
    assert format_form(zero(2)) == "0"


def test_random_form_deterministic():
    a = random_form(1, seed=7, bound=100)
    assert a == random_form(1, seed=7, bound=100)
    assert all(c.denominator == 1 and -100 <= c <= 100 for c in a.coeffs)
    c = random_form(0, seed=3, bound=5)
    assert c.degree == 0 and -5 <= c.coeffs[0] <= 5


def test_random_form_bound_validation():
    with pytest.raises(ValueError):
        random_form(2, seed=0, bound=0)


def test_product_excluding():
    L = [X, Y, Z]
    assert product_excluding(L, {1 - 1}) == parse_form("yz")
    L4 = [X, Y, Z, parse_form("x+y+z")]
    full = product_excluding(L4)
    assert full.degree == 4 and full == parse_form("xyz(x+y+z)")
    # skipping lines 2 and 3 leaves x(x+y+z)
    assert product_excluding(L4, {1, 2}) == parse_form("x^2 + xy + xz")


def test_form_length_invariant():
    with pytest.raises(ValueError):
        Form(2, (Fraction(1),) * 5)


def test_primitive():
    f = parse_form("1/2x - 3/4y")
    assert primitive(f) == parse_form("2x - 3y")


# --- properties ---------------------------------------------------------------

small = st.integers(min_value=-20, max_value=20)
rationals = st.fractions(min_value=-10, max_value=10, max_denominator=7)


@st.composite
def forms(draw, max_degree=4):
    d = draw(st.integers(min_value=0, max_value=max_degree))
    n = (d + 2) * (d + 1) // 2
    return Form.from_coeffs(d, draw(st.lists(rationals, min_size=n, max_size=n)))


points = st.tuples(rationals, rationals, rationals)


@given(forms(), forms(), points)
@settings(max_examples=150, deadline=None)
def test_evaluation_is_multiplicative(f, g, p):
    assert evaluate(mul(f, g), p) == evaluate(f, p) * evaluate(g, p)


@given(forms(), forms())
@settings(max_examples=100, deadline=None)
def test_mul_commutes_and_adds_degrees(f, g):
    assert mul(f, g) == mul(g, f)
    assert mul(f, g).degree == f.degree + g.degree


@given(forms(max_degree=6))
@settings(max_examples=200, deadline=None)
def test_parse_format_round_trip(f):
    assert parse_form(format_form(f), degree=f.degree) == f


@given(st.lists(st.tuples(small, small, small).filter(any), min_size=1, max_size=6), st.data())
@settings(max_examples=50, deadline=None)
def test_product_excluding_degree(coeffs, data):
    L = [linear(*c) for c in coeffs]
    skip = data.draw(st.sets(st.integers(min_value=0, max_value=len(L) - 1)))
    assert product_excluding(L, skip).degree == len(L) - len(skip)


def test_constant_form():
    assert const(3) * X == parse_form("3x")
