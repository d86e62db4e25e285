"""Constructive witnesses for the Freiheitssatz.

Given a relator f involving x_n and a nonzero g free of x_n, build a
homomorphism theta into the power series algebra k[[x - c]] (with the same
product ``a o b = a' b``) such that theta(f) = 0 and theta(g) != 0:

1. choose images Z_1..Z_{n-1} in k[x] keeping (g o f) o f_hat nonzero, where
   f_hat is the part of f of highest degree in x_n;
2. substituting Z_i for x_i and an unknown Z for x_n turns f into a
   differential polynomial h(x, Z^(a_1), ..., Z^(a_r));
3. find a rational point where h vanishes and dh/dt_{a_r} does not;
4. solve h = 0 coefficient by coefficient around that point.

When f(x_1, ..., x_{n-1}, 0) = 0 the image Z_n = 0 already kills f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from math import factorial

from .errors import (
    FieldObstruction,
    HypothesisViolation,
    MalformedInput,
    NovikovError,
    WitnessFailure,
)
from .evaluation import SearchConfig, eval_images, find_nonvanishing_specialization
from .novikov import product
from .poly import Polynomial, format_fraction, jet, jet_order, rational_roots, squarefree_part, var_key
from .series import PowerSeries, evaluate_polynomial

DEFAULT_ORDER = 16


class DifferentialPolynomial:
    """Polynomial in x and jet variables t_a (the a-th derivative of the unknown)."""

    __slots__ = ("poly",)

    def __init__(self, poly):
        poly = Polynomial.coerce(poly)
        for v in poly.variables():
            if v != "x" and var_key(v)[0] != 2:
                raise MalformedInput(f"variable {v} is neither x nor a jet variable")
        self.poly = poly

    @classmethod
    def parse(cls, text):
        return cls(Polynomial.parse(text))

    @property
    def jet_orders(self):
        return [jet_order(v) for v in self.poly.variables() if v != "x"]

    @property
    def top_order(self):
        orders = self.jet_orders
        if not orders:
            raise HypothesisViolation(f"{self.poly} does not involve any jet variable")
        return orders[-1]

    @property
    def top_var(self):
        return jet(self.top_order)

    def jacobian(self):
        return self.poly.diff(self.top_var)

    def __eq__(self, other):
        if isinstance(other, DifferentialPolynomial):
            return self.poly == other.poly
        return self.poly == other

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"DifferentialPolynomial({str(self.poly)!r})"


def _as_diffpoly(h):
    return h if isinstance(h, DifferentialPolynomial) else DifferentialPolynomial(h)


@dataclass
class RegularPoint:
    """L = (c, c_{a_1}, ..., c_{a_r}) with h(L) = 0 and dh/dt_{a_r}(L) != 0."""

    center: Fraction
    jets: dict
    jacobian: Fraction
    reduced: DifferentialPolynomial = None

    @property
    def top_order(self):
        return max(self.jets)

    def as_point(self):
        out = {"x": self.center}
        out.update({jet(a): v for a, v in self.jets.items()})
        return out

    def as_tuple(self):
        return (self.center,) + tuple(self.jets[a] for a in sorted(self.jets))

    def to_json(self):
        return {
            "center": format_fraction(self.center),
            "jets": {f"t{a}": format_fraction(v) for a, v in sorted(self.jets.items())},
            "jacobian": format_fraction(self.jacobian),
            "reduced": str(self.reduced) if self.reduced is not None else None,
        }


# -- extraction --------------------------------------------------------------------

def extract_diffpoly(f, images, n=None):
    """Rewrite f(Z_1, ..., Z_{n-1}, Z) = 0 as h(x, Z^(a_1), ...) = 0."""
    if n is None:
        n = f.max_generator()
    if f.max_generator() > n:
        raise MalformedInput(f"relator uses generators beyond x{n}")
    images = [Polynomial.coerce(z) for z in images]
    if len(images) < n - 1:
        raise MalformedInput(f"{len(images)} images given, {n - 1} needed")
    derivs = {}

    def d(i, k):
        if (i, k) not in derivs:
            derivs[(i, k)] = images[i - 1] if k == 0 else d(i, k - 1).diff("x")
        return derivs[(i, k)]

    h = Polynomial()
    for m, c in f.terms.items():
        term = Polynomial.constant(c)
        for g, k in m:
            term = term * (Polynomial.var(jet(k)) if g == n else d(g, k))
        h = h + term
    out = DifferentialPolynomial(h)
    if not out.jet_orders:
        raise HypothesisViolation(f"h = {h} depends on no jet variable; f does not involve x{n}")
    return out


# -- regular points ----------------------------------------------------------------

def _values(bound, with_zero):
    vals = [0] if with_zero else []
    for b in range(1, bound + 1):
        vals += [b, -b]
    return vals


def find_regular_point(h, max_grid=4):
    """Search a rational point with h = 0 and nonzero Jacobian in the top jet.

    Works on the square-free part of the primitive part of h in the top jet
    variable.  Variables absent from h are fixed at 0.  Coordinates are tried
    nonzero-first (1, -1, 2, -2, ...), shell by shell; a second pass admits 0.
    """
    h = _as_diffpoly(h)
    top = h.top_var
    red = DifferentialPolynomial(squarefree_part(h.poly, top))
    jac = red.poly.diff(top)
    others = [v for v in red.poly.variables() if v != top]
    tried = 0
    for with_zero in (False, True):
        first = 0 if with_zero else 1
        for bound in range(first, max_grid + 1):
            vals = _values(bound, with_zero)
            inner = set(_values(bound - 1, with_zero)) if bound > first else set()
            for pt in cartesian(vals, repeat=len(others)):
                if others and all(v in inner for v in pt):
                    continue
                if not others and bound > first:
                    continue
                tried += 1
                assign = dict(zip(others, (Fraction(v) for v in pt)))
                uni = red.poly.subs(assign)
                if uni.is_constant():
                    continue
                roots = sorted(set(rational_roots(uni)), key=lambda r: (abs(r), r < 0))
                for root in roots:
                    if not with_zero and root == 0:
                        continue
                    point = dict(assign)
                    point[top] = root
                    point.setdefault("x", Fraction(0))
                    jv = jac.evaluate({v: point.get(v, Fraction(0)) for v in jac.variables()})
                    if jv and not red.poly.evaluate(point) and not h.poly.evaluate(
                        {v: point.get(v, Fraction(0)) for v in h.poly.variables()}
                    ):
                        jets = {jet_order(v): point[v] for v in red.poly.variables() if v != "x"}
                        return RegularPoint(point["x"], jets, jv, red)
    raise FieldObstruction(
        f"no rational regular point of {red} within |coordinates| <= {max_grid}",
        {"reduced": str(red), "points_tried": tried, "max_grid": max_grid},
    )


# -- the series solver ------------------------------------------------------------

def _jet_assignment(h, series, order):
    out = {"x": PowerSeries.from_polynomial(Polynomial.var("x"), order, series.center)}
    for a in h.jet_orders:
        out[jet(a)] = series.derivative(a).truncate(order)
    return out


def residual(h, series):
    """h evaluated at the jets of the series, known through order N - a_r."""
    h = _as_diffpoly(h)
    order = series.order - h.top_order
    if order < 0:
        raise ValueError("series too short for the top jet order")
    return evaluate_polynomial(h.poly, _jet_assignment(h, series, order), order, series.center)


def _point_from(h, point):
    if isinstance(point, RegularPoint):
        return point.center, dict(point.jets)
    point = tuple(point)
    orders = h.jet_orders
    if len(point) != 1 + len(orders):
        raise MalformedInput(f"point needs 1 + {len(orders)} coordinates, got {len(point)}")
    return Fraction(point[0]), {a: Fraction(v) for a, v in zip(orders, point[1:])}


def solve_ode(h, point, order=DEFAULT_ORDER, overrides=None, check=False):
    """Truncated series solution of h(x, T^(a_1), ..., T^(a_m)) = 0 around L.

    Seeds a_{a_i} = c_{a_i} / a_i!; other coefficients below the top order
    come from ``overrides`` (index -> value) or default to 0.  With
    ``check=True`` each step re-verifies that the unknown enters the
    order-k equation affinely with slope J (A+k)!/k!.
    """
    h = _as_diffpoly(h)
    top = h.top_order
    center, jets = _point_from(h, point)
    if order < top:
        raise ValueError(f"truncation order {order} is below the top jet order {top}")
    at = {"x": center}
    at.update({jet(a): v for a, v in jets.items()})
    at = {v: at.get(v, Fraction(0)) for v in h.poly.variables()}
    if h.poly.evaluate(at):
        raise HypothesisViolation(f"h does not vanish at the point {at}")
    jac = h.jacobian().evaluate({v: at.get(v, Fraction(0)) for v in h.jacobian().variables()})
    if not jac:
        raise HypothesisViolation("the Jacobian in the top jet vanishes at the point")
    coeffs = [Fraction(0)] * (order + 1)
    for j, v in (overrides or {}).items():
        if j >= top:
            raise MalformedInput(f"override index {j} is not below the top jet order {top}")
        coeffs[j] = Fraction(v)
    for a, v in jets.items():
        coeffs[a] = v / factorial(a)

    for k in range(1, order - top + 1):
        idx = top + k
        coeffs[idx] = Fraction(0)
        trial = PowerSeries(coeffs[: idx + 1], center)
        r0 = residual(h, trial)[k]
        slope = jac * factorial(idx) / factorial(k)
        if check:
            coeffs[idx] = Fraction(1)
            r1 = residual(h, PowerSeries(coeffs[: idx + 1], center))[k]
            if r1 - r0 != slope:
                raise ArithmeticError(f"step {k}: slope {r1 - r0} differs from {slope}")
        coeffs[idx] = -r0 / slope
    return PowerSeries(coeffs, center)


def eval_series(e, images):
    """Image of a NovikovElement under x_i -> images[i-1] in k[[x - c]]."""
    order = min(z.order for z in images)
    center = images[0].center
    out = PowerSeries.zero(order, center)
    for m, c in e.terms.items():
        need = max(k for _, k in m)
        o = order - need
        if o < 0:
            raise ValueError("series too short for the derivatives required")
        out = out.truncate(min(out.order, o))
        term = PowerSeries.constant(c, o, center)
        for g, k in m:
            term = term * images[g - 1].derivative(k).truncate(o)
        out = out + term
    return out


# -- the witness ------------------------------------------------------------------

@dataclass
class WitnessReport:
    n: int
    branch: str
    images: list
    z_n: PowerSeries
    h: DifferentialPolynomial
    point: RegularPoint
    residual_order: int
    theta_g: Polynomial
    theta_f: PowerSeries
    phi: dict
    log: list = field(default_factory=list)

    def to_json(self):
        return {
            "n": self.n,
            "branch": self.branch,
            "phi": self.phi,
            "images": {f"x{i + 1}": str(z) for i, z in enumerate(self.images)},
            "z_n": self.z_n.to_json(),
            "h": str(self.h) if self.h is not None else None,
            "regular_point": self.point.to_json() if self.point is not None else None,
            "residual_order": self.residual_order,
            "theta_g": str(self.theta_g),
            "theta_f": {
                "center": format_fraction(self.theta_f.center),
                "order": self.theta_f.order,
                "zero": self.theta_f.is_zero(),
            },
            "log": list(self.log),
        }


def highest_part(f, n):
    """Terms of f of highest degree in x_n."""
    deg = {m: sum(1 for g, _ in m if g == n) for m in f.terms}
    top = max(deg.values())
    return f.restrict(lambda m: deg[m] == top)


def freiheitssatz_witness(f, g, order=DEFAULT_ORDER, n=None, min_exponent=2, max_grid=4, config=None):
    """Build theta with theta(f) = 0 (through the solved order) and theta(g) != 0."""
    log = []
    if n is None:
        n = f.max_generator()
    if not any(gen == n for m in f.terms for gen, _ in m):
        raise HypothesisViolation(f"f does not involve x{n}")
    if f.max_generator() > n:
        raise MalformedInput(f"f uses generators beyond x{n}")
    if not g:
        raise HypothesisViolation("g must be nonzero")
    if g.max_generator() >= n:
        raise HypothesisViolation(f"g must not involve x{n}")
    if config is None:
        config = SearchConfig(max_grid=max(8, max_grid))

    f0 = f.restrict(lambda m: all(gen != n for gen, _ in m))
    log.append(f"f with x{n} = 0 {'vanishes' if not f0 else 'is nonzero'}")

    if not f0:
        try:
            phi = find_nonvanishing_specialization(g, min_exponent, config, n=n - 1)
        except NovikovError as exc:
            raise WitnessFailure("phi-search", exc) from exc
        images = phi.images[: n - 1]
        log.append(f"phi: images {[str(z) for z in images]} keep g nonzero")
        z_n = PowerSeries.zero(order, 0)
        try:
            h = extract_diffpoly(f, images, n)
        except HypothesisViolation:
            h = None
        theta_f_poly = eval_images(f, images + [Polynomial()])
        if theta_f_poly:
            raise WitnessFailure("verify", ArithmeticError(f"theta(f) = {theta_f_poly} != 0"))
        theta_f = PowerSeries.from_polynomial(theta_f_poly, order, 0)
        theta_g = eval_images(g, images)
        if not theta_g:
            raise WitnessFailure("verify", ArithmeticError("theta(g) vanished"))
        log.append("Z_n = 0; theta(f) = 0 exactly")
        return WitnessReport(n, "shortcut", images, z_n, h, None, order, theta_g, theta_f, phi.to_json(), log)

    f_hat = highest_part(f, n)
    probe = product(product(g, f), f_hat)
    log.append(f"f_hat = {f_hat}")
    try:
        phi = find_nonvanishing_specialization(probe, min_exponent, config, n=n)
    except NovikovError as exc:
        raise WitnessFailure("phi-search", exc) from exc
    images = phi.images[: n - 1]
    log.append(f"phi: images {[str(z) for z in images]}; phi((g f) f_hat) = {phi.value}")

    try:
        h = extract_diffpoly(f, images, n)
    except NovikovError as exc:
        raise WitnessFailure("extract", exc) from exc
    log.append(f"h = {h}")
    try:
        point = find_regular_point(h, max_grid)
    except NovikovError as exc:
        raise WitnessFailure("regular-point", exc) from exc
    log.append(f"regular point {[format_fraction(v) for v in point.as_tuple()]} of {point.reduced}")
    try:
        z_n = solve_ode(point.reduced, point, order)
    except NovikovError as exc:
        raise WitnessFailure("solve", exc) from exc

    res = residual(h, z_n)
    if not res.is_zero():
        raise WitnessFailure("verify", ArithmeticError("residual of h does not vanish"))
    # theta(f) computed directly from f, independent of h
    series_images = [PowerSeries.from_polynomial(z, order, z_n.center) for z in images] + [z_n]
    theta_f = eval_series(f, series_images)
    if not theta_f.is_zero():
        raise WitnessFailure("verify", ArithmeticError("theta(f) does not vanish"))
    theta_g = eval_images(g, images)
    if not theta_g:
        raise WitnessFailure("verify", ArithmeticError("theta(g) vanished"))
    log.append(f"residual zero through order {res.order}")
    return WitnessReport(n, "general", images, z_n, h, point, res.order, theta_g, theta_f, phi.to_json(), log)
