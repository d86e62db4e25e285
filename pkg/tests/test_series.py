from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from freenov.poly import parse_polynomial as P
from freenov.series import PowerSeries, evaluate_polynomial

from oracles import taylor_shift

coeff_lists = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=1, max_size=7)


def test_taylor_expansion_matches_oracle():
    s = PowerSeries.from_polynomial(P("x^3 - 2*x + 5"), 5, 2)
    assert list(s.coeffs) == taylor_shift([5, -2, 0, 1], 2) + [0, 0]


def test_round_trip_to_polynomial():
    p = P("x^3 - 2*x + 5")
    assert PowerSeries.from_polynomial(p, 4, Fraction(1, 3)).to_polynomial() == p


def test_rejects_multivariate():
    with pytest.raises(ValueError):
        PowerSeries.from_polynomial(P("x*t0"), 3)


def test_derivative():
    s = PowerSeries([1, 1, 1, 1, 1])
    assert s.derivative().coeffs == (1, 2, 3, 4)
    assert s.derivative(2).coeffs == (2, 6, 12)
    with pytest.raises(ValueError):
        s.derivative(5)


def test_truncation_to_shorter_operand():
    a = PowerSeries([1, 2, 3])
    b = PowerSeries([1, 1])
    assert (a + b).order == 1
    assert (a * b).coeffs == (1, 3)


def test_centers_must_match():
    with pytest.raises(ValueError):
        PowerSeries([1], 0) + PowerSeries([1], 1)


@given(coeff_lists, coeff_lists)
def test_product_matches_polynomial_product(a, b):
    n = min(len(a), len(b)) - 1
    sa, sb = PowerSeries(a), PowerSeries(b)
    pa, pb = sa.to_polynomial(), sb.to_polynomial()
    assert (sa * sb) == PowerSeries.from_polynomial(pa * pb, n)


@given(coeff_lists)
def test_derivative_commutes_with_polynomials(a):
    s = PowerSeries(a)
    if s.order == 0:
        return
    assert s.derivative() == PowerSeries.from_polynomial(s.to_polynomial().diff("x"), s.order - 1)


def test_evaluate_polynomial():
    t = PowerSeries([1, 1, 0, 0])
    x = PowerSeries.from_polynomial(P("x"), 3)
    out = evaluate_polynomial(P("t0^2 - x"), {"t0": t, "x": x}, 3)
    assert out.coeffs == (1, 1, 1, 0)


def test_json():
    s = PowerSeries([Fraction(1, 2), -1], center=Fraction(-3, 4))
    assert s.to_json() == {"center": "-3/4", "order": 1, "coefficients": ["1/2", "-1"]}
    assert s.valuation() == 0 and PowerSeries.zero(3).valuation() is None
