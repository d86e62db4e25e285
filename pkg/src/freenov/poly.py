"""Sparse multivariate polynomials with exact rational coefficients.

Variables are named ``l1, l2, ...`` (the exponent parameters lambda_i),
``x`` (the variable of k[x]) and ``t0, t1, ...`` (jet variables standing for
derivatives of an unknown series).  Coefficients are ``fractions.Fraction``;
floats are rejected.

The monomial order used for leading terms on the lambda block compares total
degree, then the non-increasing exponent profile ``gamma`` lexicographically,
then the raw exponent vector lexicographically with ``l1`` most significant.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import EmptyInput, MalformedInput, MissingBinding, ParseError

_VAR_RE = re.compile(r"l([1-9]\d*)|x|t(0|[1-9]\d*)")


def var_key(name):
    """Sort key placing l1 < l2 < ... < x < t0 < t1 < ..."""
    m = _VAR_RE.fullmatch(name)
    if m is None:
        raise MalformedInput(f"unknown variable name {name!r}")
    if m.group(1) is not None:
        return (0, int(m.group(1)))
    if name == "x":
        return (1, 0)
    return (2, int(m.group(2)))


def lam(i):
    return f"l{i}"


def jet(k):
    return f"t{k}"


def is_lambda(name):
    return var_key(name)[0] == 0


def lambda_index(name):
    key = var_key(name)
    if key[0] != 0:
        raise MalformedInput(f"variable {name!r} is outside the lambda block")
    return key[1]


def jet_order(name):
    key = var_key(name)
    if key[0] != 2:
        raise MalformedInput(f"variable {name!r} is not a jet variable")
    return key[1]


def as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


def format_fraction(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Monomial(tuple):
    """Power product stored as sorted ``(variable, exponent)`` pairs."""

    def __new__(cls, exps=()):
        if isinstance(exps, Monomial):
            return exps
        if isinstance(exps, dict):
            exps = exps.items()
        acc = {}
        for v, e in exps:
            var_key(v)
            if not isinstance(e, int) or e < 0:
                raise MalformedInput(f"bad exponent {e!r} for {v}")
            if e:
                acc[v] = acc.get(v, 0) + e
        return super().__new__(cls, sorted(acc.items(), key=lambda p: var_key(p[0])))

    @classmethod
    def var(cls, name, e=1):
        return cls([(name, e)])

    @property
    def degree(self):
        return sum(e for _, e in self)

    def exponent(self, v):
        for w, e in self:
            if w == v:
                return e
        return 0

    def variables(self):
        return [v for v, _ in self]

    def as_dict(self):
        return dict(self)

    def __mul__(self, other):
        d = dict(self)
        for v, e in other:
            d[v] = d.get(v, 0) + e
        return Monomial(d)

    def divides(self, other):
        d = dict(other)
        return all(d.get(v, 0) >= e for v, e in self)

    def __truediv__(self, other):
        d = dict(self)
        for v, e in other:
            r = d.get(v, 0) - e
            if r < 0:
                raise ArithmeticError("monomial does not divide")
            d[v] = r
        return Monomial(d)

    def __repr__(self):
        return f"Monomial({self.to_text()!r})"

    def to_text(self):
        if not self:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self)


ONE = Monomial()


# -- the order on lambda monomials ---------------------------------------

def _lambda_vector(u, n):
    vec = [0] * n
    for v, e in u:
        i = lambda_index(v)
        if i > n:
            raise MalformedInput(f"{v} exceeds n={n}")
        vec[i - 1] = e
    return tuple(vec)


def _lambda_width(*monos):
    width = 0
    for u in monos:
        for v, _ in u:
            width = max(width, lambda_index(v))
    return width


def gamma(u, n=None):
    """Exponents of ``u`` sorted non-increasingly, padded with zeros to length n."""
    u = Monomial(u)
    if n is None:
        n = _lambda_width(u)
    vec = _lambda_vector(u, n)
    return tuple(sorted(vec, reverse=True))


def lambda_order_key(u, n=None):
    u = Monomial(u)
    if n is None:
        n = _lambda_width(u)
    vec = _lambda_vector(u, n)
    return (u.degree, tuple(sorted(vec, reverse=True)), vec)


def order_cmp(u, v):
    """Return -1, 0 or 1 as u precedes, equals or follows v."""
    u, v = Monomial(u), Monomial(v)
    n = _lambda_width(u, v)
    ku, kv = lambda_order_key(u, n), lambda_order_key(v, n)
    return (ku > kv) - (ku < kv)


def _print_key(u, order):
    # generalises the lambda order to every variable; used for display only
    vec = tuple(u.exponent(v) for v in order)
    return (u.degree, tuple(sorted((e for _, e in u), reverse=True)), vec)


def _deglex_key(u, order):
    return (u.degree, tuple(u.exponent(v) for v in order))


# -- polynomials ------------------------------------------------------------

@total_ordering
class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps Monomial -> nonzero Fraction."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                c = as_fraction(c)
                if not c:
                    continue
                m = Monomial(m)
                c = acc.get(m, 0) + c
                if c:
                    acc[m] = c
                else:
                    acc.pop(m, None)
        self.terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c):
        return cls({ONE: c})

    @classmethod
    def var(cls, name, e=1):
        return cls({Monomial.var(name, e): 1})

    @classmethod
    def coerce(cls, obj):
        if isinstance(obj, Polynomial):
            return obj
        return cls.constant(as_fraction(obj))

    # structure
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        return str(self) < str(other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def variables(self):
        vs = {v for m in self.terms for v, _ in m}
        return sorted(vs, key=var_key)

    def is_constant(self):
        return all(not m for m in self.terms)

    def constant_value(self):
        return self.terms.get(ONE, Fraction(0))

    def coeff(self, m):
        return self.terms.get(Monomial(m), Fraction(0))

    @property
    def total_degree(self):
        if not self.terms:
            return -1
        return max(m.degree for m in self.terms)

    def degree(self, v):
        if not self.terms:
            return -1
        return max(m.exponent(v) for m in self.terms)

    def sorted_terms(self):
        order = self.variables()
        return sorted(self.terms.items(), key=lambda mc: _print_key(mc[0], order), reverse=True)

    # arithmetic
    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return Polynomial._raw(acc)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Polynomial()
            return Polynomial._raw({m: a * c for m, a in self.terms.items()})
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = acc.get(m, 0) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return Polynomial._raw(acc)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_fraction(c)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("nonnegative integer exponent required")
        out = Polynomial.constant(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def diff(self, v):
        acc = {}
        for m, c in self.terms.items():
            e = m.exponent(v)
            if e:
                acc[m / Monomial.var(v)] = c * e
        return Polynomial(acc)

    def subs(self, mapping):
        """Substitute values or polynomials for some variables."""
        mapping = {v: Polynomial.coerce(p) for v, p in mapping.items()}
        out = Polynomial()
        cache = {}
        for m, c in self.terms.items():
            term = Polynomial.constant(c)
            keep = []
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = mapping[v] ** e
                    term = term * cache[key]
                else:
                    keep.append((v, e))
            if keep:
                term = term * Polynomial({Monomial(keep): 1})
            out = out + term
        return out

    def evaluate(self, point):
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                if v not in point:
                    raise MissingBinding(f"no value bound for variable {v}")
                val *= as_fraction(point[v]) ** e
            total += val
        return total

    def coefficients_in(self, v):
        """View as a polynomial in ``v``: dict exponent -> coefficient polynomial."""
        acc = {}
        for m, c in self.terms.items():
            e = m.exponent(v)
            rest = Monomial([(w, k) for w, k in m if w != v])
            acc.setdefault(e, {})[rest] = c
        return {e: Polynomial._raw(t) for e, t in acc.items()}

    def leading_term(self):
        return leading_term(self)

    def univariate_coeffs(self, v=None):
        """Dense coefficient list (constant first) for a univariate polynomial."""
        vs = self.variables()
        if v is None:
            if len(vs) > 1:
                raise MalformedInput("polynomial is not univariate")
            v = vs[0] if vs else "x"
        elif any(w != v for w in vs):
            raise MalformedInput(f"polynomial is not univariate in {v}")
        deg = max(self.degree(v), 0)
        out = [Fraction(0)] * (deg + 1)
        for m, c in self.terms.items():
            out[m.exponent(v)] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs, v="x"):
        return cls({Monomial.var(v, i): c for i, c in enumerate(coeffs)})

    # text
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            neg = c < 0
            a = -c if neg else c
            if not m:
                body = format_fraction(a)
            elif a == 1:
                body = m.to_text()
            else:
                body = f"{format_fraction(a)}*{m.to_text()}"
            if parts:
                parts.append(("-" if neg else "+") + body)
            else:
                parts.append(("-" if neg else "") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    @classmethod
    def parse(cls, text):
        return parse_polynomial(text)


def leading_term(f):
    """The highest term of ``f`` over the lambda variables as (Monomial, coefficient)."""
    if not f:
        raise EmptyInput("leading term of the zero polynomial")
    n = _lambda_width(*f.terms)
    m = max(f.terms, key=lambda u: lambda_order_key(u, n))
    return m, f.terms[m]


def evaluate(f, point):
    return f.evaluate(point)


# -- text format ----------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def parse_polynomial(text):
    """Parse e.g. ``l1^2 + l1*l2 - 3/2*l1``; parentheses group subexpressions."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        tok = toks[i]
        i += 1
        return tok

    def exponent():
        if peek()[:2] == ("op", "^"):
            take()
            kind, e, pos = take()
            if kind != "num":
                raise ParseError("expected exponent", pos, text)
            return e
        return 1

    def factor():
        kind, val, pos = take()
        if kind == "num":
            c = Fraction(val)
            if peek()[:2] == ("op", "/"):
                take()
                k2, den, p2 = take()
                if k2 != "num":
                    raise ParseError("expected denominator", p2, text)
                if den == 0:
                    raise ParseError("zero denominator", p2, text)
                c /= den
            return Polynomial.constant(c)
        if kind == "name":
            try:
                var_key(val)
            except MalformedInput:
                raise ParseError(f"unknown variable {val!r}", pos, text) from None
            return Polynomial.var(val, exponent())
        if (kind, val) == ("op", "("):
            inner = expr()
            k2, v2, p2 = take()
            if (k2, v2) != ("op", ")"):
                raise ParseError("expected ')'", p2, text)
            return inner ** exponent()
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", pos, text)

    def term():
        p = factor()
        while peek()[:2] == ("op", "*"):
            take()
            p = p * factor()
        return p

    def expr():
        sign = 1
        if peek()[0] == "op" and peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
        total = term() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            val = take()[1]
            total = total + term() * (-1 if val == "-" else 1)
        return total

    result = expr()
    kind, val, pos = peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos, text)
    return result


# -- linear forms -------------------------------------------------------------

@dataclass(frozen=True)
class PrefixForm:
    """l = t1*l1 + ... + tn*ln - (t1 + ... + tn) + 1 with t_i >= 0."""

    t: tuple

    def __post_init__(self):
        t = tuple(self.t)
        if any((not isinstance(a, int)) or a < 0 for a in t):
            raise MalformedInput(f"coefficients must be nonnegative integers: {t}")
        while t and t[-1] == 0:
            t = t[:-1]
        object.__setattr__(self, "t", t)

    @property
    def alpha(self):
        return sum(self.t)

    def hat(self):
        return Polynomial({Monomial.var(lam(i + 1)): a for i, a in enumerate(self.t) if a})

    def polynomial(self):
        return self.hat() + (1 - self.alpha)

    @classmethod
    def from_polynomial(cls, p):
        """Return the form if ``p`` is exactly of this shape, else None."""
        t = {}
        const = Fraction(0)
        for m, c in p.terms.items():
            if not m:
                const = c
            elif m.degree == 1 and is_lambda(m[0][0]):
                if c.denominator != 1 or c <= 0:
                    return None
                t[lambda_index(m[0][0])] = int(c)
            else:
                return None
        n = max(t, default=0)
        form = cls(tuple(t.get(i, 0) for i in range(1, n + 1)))
        return form if const == 1 - form.alpha else None

    def __str__(self):
        return str(self.polynomial())


@dataclass(frozen=True)
class AffineForm:
    """c0 + c1*l1 + ... + cn*ln with integer coefficients."""

    constant: int = 0
    coeffs: tuple = ()

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "constant", int(self.constant))

    @classmethod
    def lam(cls, i):
        return cls(0, (0,) * (i - 1) + (1,))

    def _padded(self, n):
        return self.coeffs + (0,) * (n - len(self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            return AffineForm(self.constant + other, self.coeffs)
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = self._padded(n), other._padded(n)
        return AffineForm(self.constant + other.constant, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return self + AffineForm(-other.constant, tuple(-c for c in other.coeffs))

    def evaluate(self, s):
        s = tuple(s)
        if len(self.coeffs) > len(s):
            if any(self.coeffs[len(s):]):
                raise MissingBinding(f"point of length {len(s)} does not cover the form")
        return self.constant + sum(c * v for c, v in zip(self.coeffs, s))

    def polynomial(self):
        p = {Monomial.var(lam(i + 1)): c for i, c in enumerate(self.coeffs) if c}
        p[ONE] = self.constant
        return Polynomial(p)

    @classmethod
    def from_polynomial(cls, p):
        const = 0
        cs = {}
        for m, c in p.terms.items():
            if c.denominator != 1:
                raise MalformedInput(f"non-integer coefficient in affine form: {p}")
            if not m:
                const = int(c)
            elif m.degree == 1 and is_lambda(m[0][0]):
                cs[lambda_index(m[0][0])] = int(c)
            else:
                raise MalformedInput(f"not an affine form in the lambda variables: {p}")
        n = max(cs, default=0)
        return cls(const, tuple(cs.get(i, 0) for i in range(1, n + 1)))

    @classmethod
    def parse(cls, text):
        return cls.from_polynomial(parse_polynomial(text))

    def to_json(self):
        return {"constant": self.constant, "lambda": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["constant"], tuple(obj.get("lambda", ())))

    def __str__(self):
        return str(self.polynomial())


# -- division, gcd, roots -----------------------------------------------------

def _divide(f, g):
    """Multivariate division of f by a single divisor g; returns (quotient, remainder)."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    order = sorted(set(f.variables()) | set(g.variables()), key=var_key)
    lm_g = max(g.terms, key=lambda u: _deglex_key(u, order))
    lc_g = g.terms[lm_g]
    q, r = {}, {}
    p = dict(f.terms)
    while p:
        lm = max(p, key=lambda u: _deglex_key(u, order))
        lc = p[lm]
        if lm_g.divides(lm):
            m = lm / lm_g
            c = lc / lc_g
            q[m] = q.get(m, 0) + c
            for mg, cg in g.terms.items():
                mm = m * mg
                s = p.get(mm, 0) - c * cg
                if s:
                    p[mm] = s
                else:
                    p.pop(mm, None)
        else:
            r[lm] = lc
            del p[lm]
    return Polynomial(q), Polynomial(r)


def divides_exact(f, g):
    """f/g if g divides f exactly over the rationals, else None."""
    if not g:
        raise EmptyInput("divisor is the zero polynomial")
    q, r = _divide(f, g)
    return None if r else q


def _monic(p):
    if not p:
        return p
    order = p.variables()
    lm = max(p.terms, key=lambda u: _deglex_key(u, order))
    return p / p.terms[lm]


def _content(p, v):
    g = Polynomial()
    for c in p.coefficients_in(v).values():
        g = poly_gcd(g, c)
        if g.is_constant():
            return Polynomial.constant(1)
    return g


def _prem(a, b, v):
    """Pseudo-remainder of a by b as polynomials in v."""
    db = b.degree(v)
    lc = b.coefficients_in(v)[db]
    xv = Polynomial.var(v)
    r = a
    while r and r.degree(v) >= db:
        dr = r.degree(v)
        lr = r.coefficients_in(v)[dr]
        r = r * lc - lr * b * xv ** (dr - db)
    return r


def poly_gcd(f, g):
    """Greatest common divisor, normalised to leading coefficient 1.

    Recursive primitive remainder sequence; intended for the small inputs that
    arise from differential-polynomial extraction.
    """
    if not f:
        return _monic(g)
    if not g:
        return _monic(f)
    if f.is_constant() or g.is_constant():
        return Polynomial.constant(1)
    vs = sorted(set(f.variables()) | set(g.variables()), key=var_key)
    v = vs[-1]
    if f.degree(v) == 0:
        return poly_gcd(f, _content(g, v))
    if g.degree(v) == 0:
        return poly_gcd(_content(f, v), g)
    cf, cg = _content(f, v), _content(g, v)
    c = poly_gcd(cf, cg)
    a = divides_exact(f, cf)
    b = divides_exact(g, cg)
    if a.degree(v) < b.degree(v):
        a, b = b, a
    while True:
        r = _prem(a, b, v)
        if not r:
            break
        if r.degree(v) == 0:
            b = Polynomial.constant(1)
            break
        a, b = b, divides_exact(r, _content(r, v))
    return _monic(c * b)


def primitive_part(p, v):
    """p divided by its content with respect to v."""
    return divides_exact(p, _content(p, v))


def squarefree_part(p, v):
    """Primitive part of p in v with repeated factors involving v removed."""
    pp = primitive_part(p, v)
    g = poly_gcd(pp, pp.diff(v))
    if g.is_constant():
        return pp
    return divides_exact(pp, g)


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p):
    """All rational roots of a univariate polynomial, with multiplicity, ascending."""
    if not p:
        raise EmptyInput("rational roots of the zero polynomial")
    coeffs = p.univariate_coeffs()
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots = []
    while len(ints) > 1 and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]

    def deflate(cs, r):
        # synthetic division by (t - r); cs constant-first
        out = [Fraction(0)] * (len(cs) - 1)
        acc = Fraction(0)
        for i in range(len(cs) - 1, 0, -1):
            acc = acc * r + cs[i]
            out[i - 1] = acc
        rem = acc * r + cs[0]
        return out, rem

    cs = [Fraction(c) for c in ints]
    if len(cs) > 1:
        candidates = set()
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                candidates.add(Fraction(a, b))
                candidates.add(Fraction(-a, b))
        for r in sorted(candidates):
            while len(cs) > 1:
                q, rem = deflate(cs, r)
                if rem:
                    break
                roots.append(r)
                cs = q
    return sorted(roots)


def falling_factorial(p, k):
    """p (p - 1) ... (p - k + 1)."""
    out = Polynomial.constant(1)
    for j in range(k):
        out = out * (p - j)
    return out


__all__ = [
    "Monomial", "Polynomial", "PrefixForm", "AffineForm", "ONE",
    "gamma", "order_cmp", "leading_term", "lambda_order_key", "evaluate",
    "divides_exact", "rational_roots", "poly_gcd", "primitive_part",
    "squarefree_part", "parse_polynomial", "format_fraction", "as_fraction",
    "var_key", "lam", "jet", "lambda_index", "jet_order", "is_lambda",
    "falling_factorial",
]
