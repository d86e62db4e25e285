"""Truncated formal power series in (x - c) with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .poly import Polynomial, as_fraction, format_fraction


class PowerSeries:
    """sum_{k<=N} a_k (x - c)^k + O((x - c)^(N+1)).

    Coefficients past ``order`` are unknown, not zero; every operation keeps
    only what is determined by its inputs.
    """

    __slots__ = ("center", "coeffs")

    def __init__(self, coeffs, center=0):
        self.center = as_fraction(center)
        self.coeffs = tuple(as_fraction(a) for a in coeffs)
        if not self.coeffs:
            raise ValueError("a power series needs at least one known coefficient")

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order, center=0):
        return cls([0] * (order + 1), center)

    @classmethod
    def constant(cls, c, order, center=0):
        return cls([c] + [0] * order, center)

    @classmethod
    def from_polynomial(cls, p, order, center=0):
        """Taylor expansion of a polynomial in x around ``center``."""
        p = Polynomial.coerce(p)
        c = as_fraction(center)
        shifted = p.subs({"x": Polynomial.var("x") + c}) if c else p
        out = [Fraction(0)] * (order + 1)
        for m, a in shifted.terms.items():
            e = m.exponent("x")
            if len(m) > (1 if e else 0):
                raise ValueError(f"polynomial {p} is not univariate in x")
            if e <= order:
                out[e] = a
        return cls(out, c)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        return (
            isinstance(other, PowerSeries)
            and self.center == other.center
            and self.coeffs == other.coeffs
        )

    def _check(self, other):
        if self.center != other.center:
            raise ValueError("series around different centers")

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1], self.center)

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries.constant(as_fraction(other), self.order, self.center)
        self._check(other)
        n = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], self.center)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-a for a in self.coeffs], self.center)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = as_fraction(other)
            return PowerSeries([a * c for a in self.coeffs], self.center)
        self._check(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            s = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return PowerSeries(out, self.center)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = PowerSeries.constant(1, self.order, self.center)
        for _ in range(e):
            out = out * self
        return out

    def derivative(self, k=1):
        if k > self.order:
            raise ValueError(f"order-{k} derivative of a series known to order {self.order}")
        return PowerSeries(
            [self.coeffs[j + k] * (factorial(j + k) // factorial(j)) for j in range(self.order - k + 1)],
            self.center,
        )

    def is_zero(self):
        return not any(self.coeffs)

    def valuation(self):
        for k, a in enumerate(self.coeffs):
            if a:
                return k
        return None

    def to_polynomial(self):
        """The truncation as a polynomial in x (re-expanded around 0)."""
        shift = Polynomial.var("x") - self.center
        out = Polynomial()
        for k, a in enumerate(self.coeffs):
            if a:
                out = out + shift ** k * a
        return out

    def to_json(self):
        return {
            "center": format_fraction(self.center),
            "order": self.order,
            "coefficients": [format_fraction(a) for a in self.coeffs],
        }

    def __repr__(self):
        cs = ", ".join(format_fraction(a) for a in self.coeffs)
        return f"PowerSeries([{cs}], center={format_fraction(self.center)})"


def evaluate_polynomial(p, assignment, order, center=0):
    """Substitute series for the variables of ``p``; result truncated at ``order``."""
    out = PowerSeries.zero(order, center)
    cache = {}
    for m, c in p.terms.items():
        term = PowerSeries.constant(c, order, center)
        for v, e in m:
            key = (v, e)
            if key not in cache:
                cache[key] = assignment[v].truncate(order) ** e
            term = term * cache[key]
        out = out + term
    return out
