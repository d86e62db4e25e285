"""The free Novikov algebra realised on weight -1 differential monomials.

A differential monomial is a sorted tuple of ``(generator, order)`` pairs,
read as the commutative product of the derivatives x_g^(order).  Its weight
is the sum of ``order - 1`` over the factors; elements of the free algebra
live in weight -1.  The product is ``u o v = D(u) v`` with D the derivation
raising one derivative order (Leibniz rule).
"""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from . import linalg
from .errors import InconsistentSystem, MalformedInput, ParseError
from .poly import as_fraction, format_fraction
from .tableau import enumerate_tableaux, is_word, word, word_degree


def weight(mono):
    return sum(k - 1 for _, k in mono)


def _mono(factors):
    return tuple(sorted(factors))


def derive(mono):
    """D applied to one monomial: Counter of monomials with multiplicities."""
    out = Counter()
    for i, (g, k) in enumerate(mono):
        out[_mono(mono[:i] + ((g, k + 1),) + mono[i + 1:])] += 1
    return out


def mono_to_text(mono):
    parts = []
    for g, k in mono:
        parts.append(f"x{g}" if k == 0 else f"x{g}^({k})")
    return "*".join(parts)


class NovikovElement:
    """Exact linear combination of weight -1 differential monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                c = as_fraction(c)
                if not c:
                    continue
                m = _mono(tuple((int(g), int(k)) for g, k in m))
                if weight(m) != -1:
                    raise MalformedInput(f"monomial {m} does not have weight -1")
                s = acc.get(m, 0) + c
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        self.terms = acc

    @classmethod
    def _raw(cls, terms):
        e = cls.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def generator(cls, i):
        return inject(i)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, NovikovElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, NovikovElement):
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return NovikovElement._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return NovikovElement._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NovikovElement):
            return product(self, other)
        c = as_fraction(other)
        if not c:
            return NovikovElement()
        return NovikovElement._raw({m: a * c for m, a in self.terms.items()})

    def __rmul__(self, other):
        return self * as_fraction(other)

    def generators(self):
        return sorted({g for m in self.terms for g, _ in m})

    def max_generator(self):
        return max(self.generators(), default=0)

    def degree_set(self):
        return {len(m) for m in self.terms}

    def multidegree_of(self, mono, n=None):
        counts = Counter(g for g, _ in mono)
        n = self.max_generator() if n is None else n
        return tuple(counts.get(i, 0) for i in range(1, n + 1))

    def components(self):
        """Multihomogeneous components keyed by multidegree."""
        n = self.max_generator()
        out = {}
        for m, c in self.terms.items():
            out.setdefault(self.multidegree_of(m, n), {})[m] = c
        return {md: NovikovElement._raw(t) for md, t in sorted(out.items())}

    def is_multihomogeneous(self):
        return len(self.components()) <= 1

    def multidegree(self, n=None):
        comps = self.components()
        if len(comps) != 1:
            raise MalformedInput("element is not multihomogeneous")
        (md,) = comps
        if n is not None:
            md = tuple(md) + (0,) * (n - len(md))
        return md

    def is_multilinear(self):
        comps = self.components()
        return len(comps) == 1 and all(d == 1 for d in next(iter(comps)))

    def restrict(self, keep):
        """Terms whose monomials satisfy ``keep``."""
        return NovikovElement._raw({m: c for m, c in self.terms.items() if keep(m)})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (len(mc[0]), [(g, -k) for g, k in mc[0]]))

    def to_json(self):
        return [
            {"monomial": [[g, k] for g, k in m], "coefficient": format_fraction(c)}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, obj):
        return cls({tuple(tuple(p) for p in t["monomial"]): Fraction(t["coefficient"]) for t in obj})

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            neg = c < 0
            a = -c if neg else c
            body = mono_to_text(m) if a == 1 else f"{format_fraction(a)}*{mono_to_text(m)}"
            out.append(("-" if neg else ("+" if out else "")) + body)
        return "".join(out)

    def __repr__(self):
        return f"NovikovElement({str(self)!r})"


def inject(i, n=None):
    """The free generator x_i."""
    if not isinstance(i, int) or i < 1 or (n is not None and i > n):
        raise MalformedInput(f"generator index {i!r} out of range")
    return NovikovElement._raw({((i, 0),): Fraction(1)})


def derivation(u):
    acc = Counter()
    for m, c in u.terms.items():
        for dm, mult in derive(m).items():
            acc[dm] += c * mult
    return acc


def product(u, v):
    """u o v = D(u) v, extended bilinearly."""
    du = derivation(u)
    acc = {}
    for m1, c1 in du.items():
        if not c1:
            continue
        for m2, c2 in v.terms.items():
            m = _mono(m1 + m2)
            s = acc.get(m, 0) + c1 * c2
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
    return NovikovElement._raw(acc)


def lie_bracket(u, v):
    return product(u, v) - product(v, u)


def expand_word(w):
    if not is_word(w):
        raise MalformedInput(f"not a bracketed word: {w!r}")
    if isinstance(w, int):
        return inject(w)
    return product(expand_word(w[0]), expand_word(w[1]))


def expand_combination(combo):
    """Expand a dict word -> coefficient."""
    out = NovikovElement()
    for w, c in combo.items():
        out = out + expand_word(w) * c
    return out


# -- tableau basis --------------------------------------------------------------

@lru_cache(maxsize=None)
def _basis_data(md):
    tabs = enumerate_tableaux(md)
    cols = [expand_word(word(t)).terms for t in tabs]
    keys = sorted({m for col in cols for m in col})
    inv = linalg.inverse_map(cols, keys)
    return tabs, inv


def basis_change(multidegree):
    """(tableaux, map monomial -> coordinates over the tableau words)."""
    md = tuple(multidegree)
    while md and md[-1] == 0:
        md = md[:-1]
    return _basis_data(md)


def to_tableau_basis(e, multidegree=None):
    """Coefficients of ``e`` over the words of enumerate_tableaux(multidegree)."""
    if multidegree is None:
        multidegree = e.multidegree()
    md = tuple(multidegree)
    while md and md[-1] == 0:
        md = md[:-1]
    n = len(md)
    for m in e.terms:
        if e.multidegree_of(m, max(n, e.max_generator())) != md + (0,) * (max(n, e.max_generator()) - n):
            raise MalformedInput(f"element is not homogeneous of multidegree {md}")
    tabs, inv = basis_change(md)
    coords = [Fraction(0)] * len(tabs)
    for m, c in e.terms.items():
        if m not in inv:
            raise InconsistentSystem(f"monomial {mono_to_text(m)} lies outside the span of the tableau words")
        for j, v in inv[m].items():
            coords[j] += c * v
    return coords


def from_tableau_basis(coords, multidegree):
    tabs, _ = basis_change(multidegree)
    out = NovikovElement()
    for t, c in zip(tabs, coords):
        if c:
            out = out + expand_word(word(t)) * c
    return out


# -- polarization ------------------------------------------------------------------

def multilinearize(e):
    """Full polarization of a multihomogeneous element.

    Generator i of multiplicity m is replaced by m fresh generators; fresh
    indices are consecutive, generator 1 taking 1..d1, generator 2 the next d2,
    and so on.  Returns ``(elements, mapping)`` with ``mapping[i]`` the fresh
    indices for x_i.  The single multilinear element vanishes iff ``e`` does.
    """
    if not e:
        return [], {}
    md = e.multidegree()
    mapping = {}
    nxt = 1
    for i, d in enumerate(md, start=1):
        mapping[i] = tuple(range(nxt, nxt + d))
        nxt += d
    acc = Counter()
    for m, c in e.terms.items():
        slots = {}
        for pos, (g, _) in enumerate(m):
            slots.setdefault(g, []).append(pos)
        assignments = [()]
        for g, positions in slots.items():
            assignments = [
                a + tuple(zip(positions, perm))
                for a in assignments
                for perm in permutations(mapping[g])
            ]
        for a in assignments:
            lab = dict(a)
            acc[_mono(tuple((lab[pos], k) for pos, (_, k) in enumerate(m)))] += c
    return [NovikovElement({m: c for m, c in acc.items() if c})], mapping


# -- expression parsing ----------------------------------------------------------

_TOK = re.compile(r"\s*(?:(\d+(?:/\d+)?)|x(\d+)|([()*+\-]))")


def parse_words(text):
    """Parse an expression into a dict bracketed word -> coefficient.

    Grammar: expr := term | expr '+' term | expr '-' term;
    term := [rational ['*']] factor; factor := 'x'digits | '(' expr '*' expr ')'
    (a parenthesised expr without '*' is accepted as grouping).
    """
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOK.match(text, pos)
        if m is None:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", Fraction(m.group(1)) if "/0" not in m.group(1) else None, start))
            if toks[-1][1] is None:
                raise ParseError("zero denominator", start, text)
        elif m.group(2):
            toks.append(("gen", int(m.group(2)), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def combine(a, b):
        out = {}
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                w = (w1, w2)
                out[w] = out.get(w, 0) + c1 * c2
        return {w: c for w, c in out.items() if c}

    def add(a, b, sign):
        out = dict(a)
        for w, c in b.items():
            out[w] = out.get(w, 0) + sign * c
        return {w: c for w, c in out.items() if c}

    def factor():
        kind, val, p = take()
        if kind == "gen":
            if val < 1:
                raise ParseError("generator indices start at 1", p, text)
            return {val: Fraction(1)}
        if (kind, val) == ("op", "("):
            left = expr()
            kind2, val2, p2 = take()
            if (kind2, val2) == ("op", ")"):
                return left
            if (kind2, val2) != ("op", "*"):
                raise ParseError("expected '*' or ')'", p2, text)
            right = expr()
            kind3, val3, p3 = take()
            if (kind3, val3) != ("op", ")"):
                raise ParseError("expected ')'", p3, text)
            return combine(left, right)
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected {val!r}", p, text)

    def term():
        c = Fraction(1)
        if peek()[0] == "num":
            c = take()[1]
            if c == 0 and peek()[0] != "gen" and peek()[:2] not in (("op", "*"), ("op", "(")):
                return {}
            if peek()[:2] == ("op", "*"):
                take()
        f = factor()
        return {w: c * v for w, v in f.items()}

    def expr():
        sign = 1
        if peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if take()[1] == "-" else 1
        acc = add({}, term(), sign)
        while peek()[:2] in (("op", "-"), ("op", "+")):
            s = -1 if take()[1] == "-" else 1
            acc = add(acc, term(), s)
        return acc

    result = expr()
    kind, val, p = peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", p, text)
    return result


def parse(text):
    """Parse an expression into its exact NovikovElement."""
    return expand_combination(parse_words(text))


def combination_to_text(combo):
    from .tableau import word_to_text

    out = []
    for w, c in sorted(combo.items(), key=lambda wc: (word_degree(wc[0]), str(wc[0]))):
        neg = c < 0
        a = -c if neg else c
        body = word_to_text(w) if a == 1 else f"{format_fraction(a)}{word_to_text(w)}"
        out.append(("-" if neg else ("+" if out else "")) + body)
    return "".join(out) or "0"
