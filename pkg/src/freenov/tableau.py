"""Novikov diagrams and tableaux, their associated words, and basis enumeration.

A tableau is stored as its rows of generator indices (1-based); the first row
carries the extra "nose" box as its last entry.  The degree-1 tableau is a
single nose box with an empty Young diagram.

Bracketed words are nested pairs: a leaf is a positive int, a product is a
2-tuple ``(left, right)``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .errors import InvalidTableau, MalformedInput


# -- words ------------------------------------------------------------------

def is_word(w):
    if isinstance(w, bool):
        return False
    if isinstance(w, int):
        return w >= 1
    return isinstance(w, tuple) and len(w) == 2 and is_word(w[0]) and is_word(w[1])


def word_degree(w):
    if isinstance(w, int):
        return 1
    return word_degree(w[0]) + word_degree(w[1])


def word_letters(w):
    if isinstance(w, int):
        return [w]
    return word_letters(w[0]) + word_letters(w[1])


def word_multidegree(w, n=None):
    counts = Counter(word_letters(w))
    n = max(counts) if n is None else n
    return tuple(counts.get(i, 0) for i in range(1, n + 1))


def word_to_text(w):
    if isinstance(w, int):
        return f"x{w}"
    return f"({word_to_text(w[0])}*{word_to_text(w[1])})"


def left_normed(letters):
    """((a1 a2) a3) ... ak"""
    w = letters[0]
    for a in letters[1:]:
        w = (w, a)
    return w


# -- diagrams and tableaux ----------------------------------------------------

@dataclass(frozen=True)
class NovikovDiagram:
    """Young row lengths (r1 >= ... >= rk >= 1); the nose extends row 1."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if rows == (0,):
            return
        if not rows or any((not isinstance(r, int)) or r < 1 for r in rows):
            raise MalformedInput(f"row lengths must be positive integers: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise MalformedInput(f"row lengths must be non-increasing: {rows}")

    @property
    def degree(self):
        return sum(self.rows) + 1

    def row_sizes(self):
        """Number of boxes in each row including the nose."""
        return (self.rows[0] + 1,) + self.rows[1:]

    def columns(self):
        """Column heights of the Young diagram (the conjugate partition)."""
        if self.rows == (0,):
            return ()
        return tuple(sum(1 for r in self.rows if r >= j) for j in range(1, self.rows[0] + 1))


def partitions(m, largest=None):
    """Partitions of m in decreasing lexicographic order."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


def diagrams(degree):
    """Novikov diagrams of the given degree, row vectors decreasing lexicographically."""
    if degree < 1:
        raise MalformedInput("degree must be at least 1")
    if degree == 1:
        return [NovikovDiagram((0,))]
    return [NovikovDiagram(p) for p in partitions(degree - 1)]


@dataclass(frozen=True)
class Violation:
    rule: str
    positions: tuple

    def __str__(self):
        locs = ",".join(f"({i},{j})" for i, j in self.positions)
        return f"{self.rule} at {locs}"


@dataclass(frozen=True)
class NovikovTableau:
    rows: tuple

    def __post_init__(self):
        try:
            rows = tuple(tuple(int(a) for a in row) for row in self.rows)
        except (TypeError, ValueError):
            raise MalformedInput(f"rows must be sequences of generator indices: {self.rows!r}") from None
        if not rows or any(not row for row in rows):
            raise MalformedInput("tableau rows must be nonempty")
        if any(a < 1 for row in rows for a in row):
            raise MalformedInput("generator indices are 1-based")
        object.__setattr__(self, "rows", rows)
        # shape check: builds the diagram or raises
        self.diagram

    @property
    def diagram(self):
        r = (len(self.rows[0]) - 1,) + tuple(len(row) for row in self.rows[1:])
        if r[0] == 0 and len(r) > 1:
            raise MalformedInput("a nose-only first row cannot be followed by further rows")
        return NovikovDiagram(r)

    @property
    def degree(self):
        return sum(len(row) for row in self.rows)

    def labels(self):
        return [a for row in self.rows for a in row]

    def multidegree(self, n=None):
        counts = Counter(self.labels())
        n = max(counts) if n is None else n
        return tuple(counts.get(i, 0) for i in range(1, n + 1))

    def first_column(self):
        return tuple(row[0] for row in self.rows)

    def is_multilinear(self):
        labels = self.labels()
        return len(set(labels)) == len(labels)

    def violations(self):
        """All filling-rule violations, F1 first, in reading order."""
        out = []
        r = self.diagram.rows
        for i in range(len(self.rows) - 1):
            if r[i] == r[i + 1] and self.rows[i][0] < self.rows[i + 1][0]:
                out.append(Violation("F1", ((i + 1, 1), (i + 2, 1))))
        seq = self.f2_positions()
        for (p, q) in zip(seq, seq[1:]):
            if self[p] > self[q]:
                out.append(Violation("F2", (p, q)))
        return out

    def f2_positions(self):
        """Boxes read in the order of rule F2 (1-based (row, column))."""
        k = len(self.rows)
        pos = []
        for i in range(k, 0, -1):
            pos.extend((i, j) for j in range(2, len(self.rows[i - 1]) + 1))
        return pos

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    def to_json(self):
        return {"rows": [list(row) for row in self.rows], "nose_included": True}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"invalid tableau JSON: {exc}") from None
        if not isinstance(obj, dict) or "rows" not in obj:
            raise MalformedInput("tableau JSON needs a 'rows' array")
        rows = [list(r) for r in obj["rows"]]
        if not obj.get("nose_included", True):
            if "nose" not in obj or not rows:
                raise MalformedInput("'nose' is required when nose_included is false")
            rows[0] = rows[0] + [obj["nose"]]
        return cls(rows)

    def __str__(self):
        return " / ".join(" ".join(f"x{a}" for a in row) for row in self.rows)


def validate(t):
    """(ok, first violation or None); raises on shape mismatch."""
    if not isinstance(t, NovikovTableau):
        t = NovikovTableau(t)
    v = t.violations()
    return (not v, v[0] if v else None)


def word(t):
    """W_k(W_{k-1}(...(W_2 W_1)...)) with left-normed row words."""
    ok, why = validate(t)
    if not ok:
        raise InvalidTableau(f"tableau {t} violates {why}")
    row_words = [left_normed(list(row)) for row in t.rows]
    w = row_words[0]
    for rw in row_words[1:]:
        w = (rw, w)
    return w


def _sub_multisets(counts, size):
    """Multisets of the given size drawn from ``counts`` (dict label -> available)."""
    labels = sorted(a for a, c in counts.items() if c)
    for combo in combinations_with_replacement(labels, size):
        need = Counter(combo)
        if all(counts[a] >= c for a, c in need.items()):
            yield combo


def _fill(diagram, multidegree):
    counts = Counter({i + 1: d for i, d in enumerate(multidegree) if d})
    r = diagram.rows
    if r == (0,):
        (label,) = counts.elements()
        yield NovikovTableau(((label,),))
        return
    # blocks of equal row length share rule F1
    blocks = []
    i = 0
    while i < len(r):
        j = i
        while j < len(r) and r[j] == r[i]:
            j += 1
        blocks.append(j - i)
        i = j
    seq_len = diagram.degree - len(r)

    def assign(bi, remaining, firsts):
        if bi == len(blocks):
            rest = sorted(remaining.elements())
            assert len(rest) == seq_len
            yield firsts, rest
            return
        for combo in _sub_multisets(remaining, blocks[bi]):
            left = remaining - Counter(combo)
            yield from assign(bi + 1, left, firsts + sorted(combo, reverse=True))

    for firsts, rest in assign(0, counts, []):
        sizes = diagram.row_sizes()
        rows = [[a] for a in firsts]
        # F2 reading order: bottom row first, columns 2.. of each row
        it = iter(rest)
        for ri in range(len(rows) - 1, -1, -1):
            for _ in range(sizes[ri] - 1):
                rows[ri].append(next(it))
        yield NovikovTableau(rows)


@lru_cache(maxsize=None)
def _enumerate(multidegree):
    out = []
    for dg in diagrams(sum(multidegree)):
        fills = sorted(_fill(dg, multidegree), key=lambda t: t.labels())
        out.extend(fills)
    return tuple(out)


def enumerate_tableaux(multidegree):
    """All tableaux with multidegree[i-1] occurrences of x_i, in canonical order."""
    md = tuple(int(d) for d in multidegree)
    if any(d < 0 for d in md):
        raise MalformedInput("multidegree entries must be nonnegative")
    if sum(md) < 1:
        raise MalformedInput("multidegree must have positive total degree")
    while md and md[-1] == 0:
        md = md[:-1]
    return list(_enumerate(md))


def multilinear_basis(n):
    if n < 1:
        raise MalformedInput("n must be at least 1")
    return enumerate_tableaux((1,) * n)
