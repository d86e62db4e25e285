"""Homomorphisms from the free Novikov algebra into polynomial Novikov algebras.

``A`` is k[x] with ``f o g = f' g``; its elements are Polynomials in ``x``.
``A(lambda)`` holds formal sums of terms ``c(lambda) x^(g(lambda))`` with g an
integer affine form, under ``a o b = D(a) b`` and
``D(x^g) = g x^(g - 1)``.  The specialisation ``s`` sends x_i to x^(s_i); the
generic map sends x_i to x^(lambda_i).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian

from . import linalg
from .errors import EmptyInput, InvalidTableau, MalformedInput, NotATableau, SearchExhausted
from .novikov import NovikovElement, to_tableau_basis
from .poly import AffineForm, PrefixForm, Monomial, Polynomial, divides_exact, falling_factorial, lam, lambda_order_key
from .tableau import NovikovTableau, is_word, validate

X = Polynomial.var("x")


# -- the algebra A ------------------------------------------------------------------

def circ(a, b):
    """a o b = a' b in k[x]."""
    return Polynomial.coerce(a).diff("x") * Polynomial.coerce(b)


def x_power(e):
    return Polynomial.var("x", e)


def _derivatives(p, k, cache):
    key = (id(p), k)
    if key not in cache:
        cache[key] = p if k == 0 else _derivatives(p, k - 1, cache).diff("x")
    return cache[key]


def eval_images(e, images):
    """Image of ``e`` under x_i -> images[i-1] (elements of A)."""
    images = [Polynomial.coerce(z) for z in images]
    if isinstance(e, NovikovElement):
        need = e.max_generator()
        if need > len(images):
            raise MalformedInput(f"{len(images)} images given for {need} generators")
        cache = {}
        out = Polynomial()
        for m, c in e.terms.items():
            term = Polynomial.constant(c)
            for g, k in m:
                term = term * _derivatives(images[g - 1], k, cache)
                if not term:
                    break
            out = out + term
        return out
    if isinstance(e, dict):
        out = Polynomial()
        for w, c in e.items():
            out = out + eval_images(w, images) * c
        return out
    if not is_word(e):
        raise MalformedInput(f"cannot evaluate {e!r}")
    if isinstance(e, int):
        if e > len(images):
            raise MalformedInput(f"{len(images)} images given for generator x{e}")
        return images[e - 1]
    return circ(eval_images(e[0], images), eval_images(e[1], images))


def eval_s(e, s):
    """Image under the specialisation x_i -> x^(s_i)."""
    if any((not isinstance(v, int)) or v < 0 for v in s):
        raise MalformedInput(f"exponents must be nonnegative integers: {s}")
    return eval_images(e, [x_power(v) for v in s])


# -- the algebra A(lambda) -----------------------------------------------------------

class ALambdaElement:
    """Formal sum of c(lambda) x^(g(lambda)); ``terms`` maps AffineForm -> Polynomial."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc = {}
        for g, c in (terms or {}).items():
            c = Polynomial.coerce(c)
            s = acc.get(g, Polynomial()) + c
            if s:
                acc[g] = s
            else:
                acc.pop(g, None)
        self.terms = acc

    @classmethod
    def generator(cls, i):
        return cls({AffineForm.lam(i): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, ALambdaElement) and self.terms == other.terms

    def __add__(self, other):
        acc = dict(self.terms)
        for g, c in other.terms.items():
            acc[g] = acc.get(g, Polynomial()) + c
        return ALambdaElement(acc)

    def scale(self, c):
        return ALambdaElement({g: p * c for g, p in self.terms.items()})

    def derive(self):
        return ALambdaElement({g - 1: p * g.polynomial() for g, p in self.terms.items()})

    def circ(self, other):
        acc = {}
        for g1, p1 in self.derive().terms.items():
            for g2, p2 in other.terms.items():
                g = g1 + g2
                acc[g] = acc.get(g, Polynomial()) + p1 * p2
        return ALambdaElement(acc)

    def single_term(self):
        if len(self.terms) != 1:
            raise MalformedInput(f"expected a single term, found {len(self.terms)}")
        ((g, c),) = self.terms.items()
        return c, g

    def specialize(self, s):
        """Substitute lambda_i = s_i, landing in k[x]."""
        point = {lam(i + 1): v for i, v in enumerate(s)}
        out = Polynomial()
        for g, c in self.terms.items():
            val = c.evaluate(point)
            if not val:
                continue
            e = g.evaluate(s)
            if e < 0:
                raise ArithmeticError(f"negative exponent {e} with nonzero coefficient at {s}")
            out = out + x_power(e) * val
        return out

    def to_json(self):
        items = sorted(self.terms.items(), key=lambda gc: (gc[0].coeffs, gc[0].constant))
        return [{"coefficient": str(c), "exponent": g.to_json()} for g, c in items]

    @classmethod
    def from_json(cls, obj):
        return cls({AffineForm.from_json(t["exponent"]): Polynomial.parse(t["coefficient"]) for t in obj})

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*x^({g})" for c, g in ((c, g) for g, c in self.terms.items()))


def eval_lambda(e):
    """Image under x_i -> x^(lambda_i).

    Words are evaluated by structural recursion; NovikovElements by sending
    each factor x_g^(k) to lambda_g (lambda_g - 1) ... (lambda_g - k + 1) x^(lambda_g - k).
    """
    if isinstance(e, NovikovElement):
        acc = ALambdaElement()
        for m, c in e.terms.items():
            coef = Polynomial.constant(c)
            expo = AffineForm()
            for g, k in m:
                coef = coef * falling_factorial(Polynomial.var(lam(g)), k)
                expo = expo + AffineForm.lam(g) - k
            acc = acc + ALambdaElement({expo: coef})
        return acc
    if isinstance(e, dict):
        acc = ALambdaElement()
        for w, c in e.items():
            acc = acc + eval_lambda(w).scale(c)
        return acc
    if not is_word(e):
        raise MalformedInput(f"cannot evaluate {e!r}")
    if isinstance(e, int):
        return ALambdaElement.generator(e)
    return eval_lambda(e[0]).circ(eval_lambda(e[1]))


# -- closed forms and reconstruction --------------------------------------------------

@dataclass(frozen=True)
class LemmaOnePair:
    f: Polynomial
    g: AffineForm

    def to_json(self):
        return {"f": str(self.f), "g": str(self.g)}


def _row_factors(labels, length):
    """Prefix forms for the first ``length`` prefixes of a row."""
    out = []
    counts = Counter()
    for j in range(length):
        counts[labels[j]] += 1
        n = max(counts)
        out.append(PrefixForm(tuple(counts.get(i, 0) for i in range(1, n + 1))))
    return out


def tableau_factors(t):
    """All linear factors of f_T, row by row."""
    r = t.diagram.rows
    if r == (0,):
        return []
    out = []
    for row, length in zip(t.rows, r):
        out.extend(_row_factors(row, length))
    return out


def lemma1_fg(t):
    """(f_T, g_T) in closed form."""
    if not isinstance(t, NovikovTableau):
        t = NovikovTableau(t)
    ok, why = validate(t)
    if not ok:
        raise InvalidTableau(f"tableau {t} violates {why}")
    f = Polynomial.constant(1)
    for form in tableau_factors(t):
        f = f * form.polynomial()
    md = t.multidegree()
    g = AffineForm(1 - t.degree, md)
    return LemmaOnePair(f, g)


def _candidate_forms(md, max_alpha):
    ranges = [range(d + 1) for d in md]
    out = []
    for t in cartesian(*ranges):
        a = sum(t)
        if 1 <= a <= max_alpha:
            out.append(PrefixForm(t))
    out.sort(key=lambda form: (-form.alpha, form.t))
    return out


def reconstruct(f, g):
    """Recover the tableau T with (f_T, g_T) = (f, g)."""
    f = Polynomial.coerce(f)
    if not isinstance(g, AffineForm):
        g = AffineForm.from_polynomial(Polynomial.coerce(g))
    md = g.coeffs
    if any(d < 0 for d in md):
        raise NotATableau(f"exponent form {g} has a negative multiplicity")
    d = sum(md)
    if d < 1 or g.constant != 1 - d:
        raise NotATableau(f"exponent form {g} is not of the shape d1*l1+...+dn*ln-d+1")
    if d == 1:
        if f != 1:
            raise NotATableau("a degree-1 tableau has f = 1")
        return NovikovTableau(((md.index(1) + 1,),))
    deg = d - 1
    if not f or f.total_degree != deg:
        raise NotATableau(f"f must have total degree {deg}")

    # exact multiset of prefix-form divisors
    factors = Counter()
    rem = f
    for form in _candidate_forms(md, deg):
        p = form.polynomial()
        while rem.total_degree >= 1:
            q = divides_exact(rem, p)
            if q is None:
                break
            factors[form] += 1
            rem = q
    if rem != 1 or sum(factors.values()) != deg:
        raise NotATableau(f"{f} is not a product of prefix forms")

    alphas = Counter(form.alpha for form in factors.elements())
    cols = [alphas.get(j, 0) for j in range(1, max(alphas) + 1)]
    if any(c == 0 for c in cols) or any(a < b for a, b in zip(cols, cols[1:])):
        raise NotATableau(f"column sizes {cols} do not form a Young diagram")
    rows = [sum(1 for c in cols if c >= i) for i in range(1, cols[0] + 1)]
    k = len(rows)

    # first column multiset from the lambda_i factors; the rest is fixed by F2
    first = Counter()
    for form in factors.elements():
        if form.alpha == 1:
            first[len(form.t)] += 1
    rest = Counter({i + 1: c for i, c in enumerate(md) if c}) - first
    if sum(rest.values()) != d - k or any(first[i] > md[i - 1] for i in first):
        raise NotATableau("first-column multiplicities are inconsistent with g")
    sizes = [rows[0] + 1] + rows[1:]
    cells = [[None] * s for s in sizes]
    it = iter(sorted(rest.elements()))
    for ri in range(k - 1, -1, -1):
        for j in range(1, sizes[ri]):
            cells[ri][j] = next(it)

    # peel blocks of equal row length, longest first, to place the first column
    remaining = Counter(factors)
    i = 0
    while i < k:
        r = rows[i]
        j = i
        while j < k and rows[j] == r:
            j += 1
        top = [form for form in remaining.elements() if form.alpha == r]
        if len(top) != j - i:
            raise NotATableau(f"expected {j - i} factors with alpha={r}, found {len(top)}")
        total = Counter()
        for form in top:
            for idx, c in enumerate(form.t, start=1):
                total[idx] += c
        for ri in range(i, j):
            for jj in range(1, r):
                total[cells[ri][jj]] -= 1
        if any(v < 0 for v in total.values()):
            raise NotATableau("factor sums are inconsistent with the filling rules")
        labels = sorted(total.elements(), reverse=True)
        if len(labels) != j - i:
            raise NotATableau("factor sums are inconsistent with the filling rules")
        for ri, a in zip(range(i, j), labels):
            cells[ri][0] = a
            for form in _row_factors(cells[ri], r):
                if remaining[form] <= 0:
                    raise NotATableau(f"factor {form} of row {ri + 1} does not divide f")
                remaining[form] -= 1
        i = j
    if +remaining:
        raise NotATableau("unused linear factors remain")
    try:
        t = NovikovTableau(cells)
        ok, _ = validate(t)
    except MalformedInput as exc:
        raise NotATableau(str(exc)) from None
    if not ok or lemma1_fg(t) != LemmaOnePair(f, g):
        raise NotATableau("recovered filling does not reproduce (f, g)")
    return t


def leading_f(t):
    """Leading monomial of f_T for a tableau without repeated labels."""
    if not isinstance(t, NovikovTableau):
        t = NovikovTableau(t)
    if not t.is_multilinear():
        raise MalformedInput("leading_f requires a tableau without repeated labels")
    r = t.diagram.rows
    if r == (0,):
        return Monomial()
    return Monomial([(lam(a), ri) for a, ri in zip(t.first_column(), r)])


def independence_rank(n):
    """(rank of {f_T : T in T_n} over the monomial basis, |T_n|)."""
    from .tableau import multilinear_basis

    tabs = multilinear_basis(n)
    rows = [dict(lemma1_fg(t).f.terms) for t in tabs]
    keys = {m: i for i, m in enumerate(sorted({m for r in rows for m in r}, key=lambda u: lambda_order_key(u, n)))}
    return linalg.rank([{keys[m]: c for m, c in r.items()} for r in rows]), len(tabs)


# -- nonvanishing specialisations ----------------------------------------------------

@dataclass
class Specialization:
    """A homomorphism into A that keeps an element nonzero."""

    images: list
    value: Polynomial
    exponents: tuple = None
    route: str = "grid"
    tried: int = 0

    def to_json(self):
        return {
            "s": list(self.exponents) if self.exponents is not None else None,
            "images": [str(z) for z in self.images],
            "image": str(self.value),
            "route": self.route,
            "points_tried": self.tried,
        }


@dataclass
class SearchConfig:
    max_grid: int = 8
    random_trials: int = 200
    poly_trials: int = 200
    poly_degree: int = 3
    seed: int = 0
    extra: dict = field(default_factory=dict)


def grid_points(dim, lo, max_b):
    """Points of [lo, lo+B]^dim shell by shell (B = 0, 1, ...), lexicographic within a shell."""
    if dim == 0:
        yield ()
        return
    for b in range(max_b + 1):
        for pt in cartesian(range(lo, lo + b + 1), repeat=dim):
            if max(pt) - lo == b:
                yield pt


def _lambda_polynomial(e):
    """P(lambda) and exponent with lambda(e) = P x^g, for multihomogeneous e."""
    if e.is_multilinear() and e.max_generator() == len(e.multidegree()):
        from .tableau import enumerate_tableaux

        md = e.multidegree()
        coords = to_tableau_basis(e, md)
        p = Polynomial()
        for t, a in zip(enumerate_tableaux(md), coords):
            if a:
                p = p + lemma1_fg(t).f * a
        return p, AffineForm(1 - sum(md), md), "tableau-basis"
    img = eval_lambda(e)
    if not img:
        return Polynomial(), None, "lambda"
    p, g = img.single_term()
    return p, g, "lambda"


def find_nonvanishing_specialization(e, min_exponent=0, config=None, n=None):
    """Find a homomorphism into A (images in x^min_exponent k[x]) with nonzero image of e."""
    if config is None:
        config = SearchConfig()
    if not isinstance(e, NovikovElement):
        raise MalformedInput("a NovikovElement is required")
    if not e:
        raise EmptyInput("the zero element vanishes under every homomorphism")
    n = max(n or 0, e.max_generator())
    gens = e.generators()
    lo = min_exponent
    tried = 0

    def full(sub):
        s = [lo] * n
        for g, v in zip(gens, sub):
            s[g - 1] = v
        return tuple(s)

    if e.is_multihomogeneous():
        p, g, route = _lambda_polynomial(e)
        if not p:
            raise SearchExhausted("element vanishes in A(lambda)", {"route": route})
        bound = max(config.max_grid, max(p.degree(lam(i)) for i in gens))
        for sub in grid_points(len(gens), lo, bound):
            tried += 1
            s = full(sub)
            if p.evaluate({lam(i + 1): v for i, v in enumerate(s)}):
                value = eval_s(e, s)
                expected = x_power(g.evaluate(s)) * p.evaluate({lam(i + 1): v for i, v in enumerate(s)})
                if value != expected:
                    raise ArithmeticError(f"specialisation mismatch at {s}: {value} != {expected}")
                return Specialization([x_power(v) for v in s], value, s, route, tried)
        raise SearchExhausted("grid exhausted", {"route": route, "points_tried": tried, "bound": bound})

    for sub in grid_points(len(gens), lo, config.max_grid):
        tried += 1
        s = full(sub)
        value = eval_s(e, s)
        if value:
            return Specialization([x_power(v) for v in s], value, s, "grid", tried)
    rng = random.Random(config.seed)
    width = config.max_grid + 1
    for _ in range(config.random_trials):
        tried += 1
        width += 1
        s = full(tuple(rng.randint(lo, lo + width) for _ in gens))
        value = eval_s(e, s)
        if value:
            return Specialization([x_power(v) for v in s], value, s, "random", tried)
    for _ in range(config.poly_trials):
        tried += 1
        images = []
        for _ in range(n):
            cs = [0] * lo + [rng.randint(-3, 3) for _ in range(config.poly_degree + 1)]
            images.append(Polynomial.from_univariate([Fraction(c) for c in cs]))
        value = eval_images(e, images)
        if value:
            return Specialization(images, value, None, "polynomial", tried)
    raise SearchExhausted(
        "no nonvanishing specialisation found",
        {"points_tried": tried, "max_grid": config.max_grid, "min_exponent": lo},
    )
