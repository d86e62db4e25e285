from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freenov.errors import FieldObstruction, HypothesisViolation, MalformedInput, WitnessFailure
from freenov.evaluation import eval_images
from freenov.freiheit import (
    DifferentialPolynomial,
    eval_series,
    extract_diffpoly,
    find_regular_point,
    freiheitssatz_witness,
    highest_part,
    residual,
    solve_ode,
)
from freenov.novikov import parse
from freenov.poly import parse_polynomial as P
from freenov.series import PowerSeries

from oracles import binomial_half, exp_coefficients, taylor_shift

H = DifferentialPolynomial.parse


# -- extraction -------------------------------------------------------------------

def test_extract_examples():
    assert extract_diffpoly(parse("(x2*x2) - x1"), [P("x^2")]).poly == P("t1*t0 - x^2")
    assert extract_diffpoly(parse("(x2*x1)"), [P("x")]).poly == P("t1*x")


def test_extract_requires_xn():
    with pytest.raises(HypothesisViolation):
        extract_diffpoly(parse("(x1*x1)"), [P("x^2")], n=2)


def test_extract_needs_images():
    with pytest.raises(MalformedInput):
        extract_diffpoly(parse("(x2*x1)"), [])


def test_diffpoly_rejects_foreign_variables():
    with pytest.raises(MalformedInput):
        H("l1*t0")
    assert H("t3*t1 - x").jet_orders == [1, 3] and H("t3*t1 - x").top_order == 3


# -- regular points ---------------------------------------------------------------

def test_regular_point_examples():
    p = find_regular_point(H("t1 - t0"))
    assert p.as_tuple() == (0, 1, 1) and p.jacobian == 1
    p = find_regular_point(H("t1*t0 - x^2"))
    assert p.as_tuple() == (1, 1, 1) and p.jacobian == 1


def test_field_obstruction():
    with pytest.raises(FieldObstruction) as info:
        find_regular_point(H("t1^2 + 1"))
    assert info.value.diagnostics["points_tried"] > 0


def test_regular_point_avoids_singular_factor():
    # (t1 - x)^2 has zero Jacobian everywhere on its zero set; its square-free part does not
    h = H("(t1 - x)^2*(t0 + 1)")
    p = find_regular_point(h)
    # content in t0 is removed, so t0 is left free
    assert p.reduced.poly in (P("t1 - x"), P("x - t1"))
    assert h.poly.evaluate({"t0": 0, **p.as_point()}) == 0
    assert p.reduced.poly.diff("t1").evaluate(p.as_point()) != 0


def test_regular_point_zero_coordinates():
    assert find_regular_point(H("t0")).as_tuple() == (0, 0)


# -- solver --------------------------------------------------------------------------

def test_exponential():
    s = solve_ode(H("t1 - t0"), (0, 1, 1), 16, check=True)
    assert list(s.coeffs) == exp_coefficients(16)
    r = residual(H("t1 - t0"), s)
    assert r.order == 15 and r.is_zero()


def test_square_root():
    s = solve_ode(H("2*t1*t0 - 1"), (0, 1, Fraction(1, 2)), 8, check=True)
    assert list(s.coeffs) == binomial_half(8)
    sq = s * s
    assert sq.coeffs == (1, 1) + (0,) * 7


def test_fixed_point_zero_series():
    s = solve_ode(H("t1 - t0"), (0, 0, 0), 10)
    assert s.is_zero()


def test_seeding_contract():
    h = H("t2 - t0*x")
    s = solve_ode(h, (1, 3, 3), 10, overrides={1: 5}, check=True)
    assert s[0] == 3 and s[1] == 5 and s[2] * 2 == 3
    assert residual(h, s).is_zero()


def test_solver_preconditions():
    with pytest.raises(HypothesisViolation):
        solve_ode(H("t1 - t0"), (0, 1, 2))
    with pytest.raises(HypothesisViolation):
        solve_ode(H("t1^2 - t0"), (0, 0, 0))
    with pytest.raises(MalformedInput):
        solve_ode(H("t1 - t0"), (0, 1))


@settings(max_examples=25)
@given(st.integers(-2, 2), st.integers(-3, 3), st.integers(1, 3), st.integers(-2, 2))
def test_solver_residual_vanishes(c, c0, a, b):
    # t1 = a*t0 + b*x + k with k chosen to make the point regular
    c0 = Fraction(c0)
    c1 = Fraction(a) * c0 + b * c + 1
    h = DifferentialPolynomial(P("t1") - P("t0") * a - P("x") * b - 1)
    s = solve_ode(h, (c, c0, c1), 8, check=True)
    assert residual(h, s).is_zero()


def test_residual_example():
    # oracle: T = 1 + x gives T' - T = -x
    r = residual(H("t1 - t0"), PowerSeries([1, 1, 0, 0, 0]))
    assert r.coeffs == (0, -1, 0, 0)


def test_residual_of_exact_polynomial_solution():
    # T = x^2 + 3 solves T' - 2x = 0
    h = H("t1 - 2*x")
    for center in (0, 2, Fraction(-1, 3)):
        s = PowerSeries.from_polynomial(P("x^2 + 3"), 6, center)
        assert residual(h, s).is_zero()


# -- witness ----------------------------------------------------------------------

def test_witness_general_branch():
    f, g = parse("(x2*x2) - x1"), parse("x1")
    rep = freiheitssatz_witness(f, g, order=12)
    assert rep.branch == "general"
    assert rep.images == [P("x^2")]
    assert rep.h.poly == P("t1*t0 - x^2")
    assert rep.point.as_tuple() == (1, 1, 1)
    assert rep.z_n.center == 1 and rep.z_n[0] == 1
    assert rep.residual_order == 11 and residual(rep.h, rep.z_n).is_zero()
    assert rep.theta_g == P("x^2")
    # closed form: Z^2 = 2x^3/3 + 1/3
    closed = taylor_shift([Fraction(1, 3), 0, 0, Fraction(2, 3)], 1) + [0] * 9
    assert list((rep.z_n * rep.z_n).coeffs) == closed
    assert rep.theta_f.is_zero()


def test_witness_theta_f_independent_of_h():
    f, g = parse("(x2*x2) - x1"), parse("x1")
    rep = freiheitssatz_witness(f, g, order=12)
    images = [PowerSeries.from_polynomial(z, 12, rep.z_n.center) for z in rep.images] + [rep.z_n]
    assert eval_series(f, images).is_zero()


@pytest.mark.parametrize("f", ["(x2*x1)", "x2", "((x2*x1)*x1) + (x1*x2)"])
def test_witness_shortcut(f):
    f, g = parse(f), parse("x1")
    rep = freiheitssatz_witness(f, g, order=8)
    assert rep.branch == "shortcut"
    assert rep.z_n.is_zero()
    assert eval_images(f, rep.images + [P("0")]) == 0
    assert rep.theta_g != 0


def test_witness_hypotheses():
    with pytest.raises(HypothesisViolation):
        freiheitssatz_witness(parse("(x1*x1)"), parse("x1"), n=2)
    with pytest.raises(HypothesisViolation):
        freiheitssatz_witness(parse("(x2*x2)"), parse("x2"))
    with pytest.raises(HypothesisViolation):
        freiheitssatz_witness(parse("(x2*x2)"), parse("0"))


def test_witness_reports_failing_stage():
    # with a zero-width grid only the origin is tried, where h = t1*t0 - x^2 is degenerate
    with pytest.raises(WitnessFailure) as info:
        freiheitssatz_witness(parse("(x2*x2) - x1"), parse("x1"), order=6, max_grid=0)
    assert info.value.stage == "regular-point"
    assert isinstance(info.value.cause, FieldObstruction)


def test_witness_three_generators():
    f = parse("(x3*x3) - (x1*x2)")
    g = parse("(x1*x2) - (x2*x1)")
    rep = freiheitssatz_witness(f, g, order=8)
    assert rep.branch == "general"
    assert rep.theta_g != 0 and rep.theta_f.is_zero()
    assert residual(rep.h, rep.z_n).is_zero()


def test_witness_deterministic():
    f, g = parse("(x2*x2) - x1"), parse("x1")
    assert freiheitssatz_witness(f, g, order=8).to_json() == freiheitssatz_witness(f, g, order=8).to_json()


def test_highest_part():
    f = parse("((x2*x2)*x1) + (x2*x1) - x1")
    assert highest_part(f, 2) == parse("((x2*x2)*x1)")
