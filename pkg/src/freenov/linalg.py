"""Exact Gaussian elimination over the rationals on sparse rows.

Rows are dicts ``column -> Fraction``; zero entries are never stored.
"""

from fractions import Fraction

from .errors import InconsistentSystem


def _eliminate(rows, ncols=None):
    """Reduce rows to echelon form in place; return list of (pivot column, row)."""
    pivots = []
    pending = [dict(r) for r in rows if r]
    while pending:
        # pick the globally smallest column present as the next pivot column
        col = min(min(r) for r in pending)
        idx = next(i for i, r in enumerate(pending) if col in r)
        prow = pending.pop(idx)
        inv = 1 / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        survivors = []
        for r in pending:
            f = r.get(col)
            if f:
                for c, v in prow.items():
                    s = r.get(c, 0) - f * v
                    if s:
                        r[c] = s
                    else:
                        r.pop(c, None)
            if r:
                survivors.append(r)
        pending = survivors
        pivots.append((col, prow))
    return pivots


def rank(rows):
    """Rank of the matrix given by sparse rows."""
    return len(_eliminate(rows))


def inverse_map(columns, keys):
    """Invert a square change of basis.

    ``columns[j]`` is the expansion (dict key -> coefficient) of the j-th new
    basis vector in the old basis indexed by ``keys``.  Returns a dict sending
    each old key to its coordinate vector (dict j -> coefficient) in the new
    basis.  Raises InconsistentSystem when the matrix is singular or not square.
    """
    m = len(columns)
    if m != len(keys):
        raise InconsistentSystem(f"change of basis is not square: {m} vectors, {len(keys)} coordinates")
    kidx = {k: i for i, k in enumerate(keys)}
    # augmented rows [M | I] where rows are indexed by old keys, columns by new vectors
    rows = [dict() for _ in keys]
    for j, col in enumerate(columns):
        for k, v in col.items():
            if v:
                rows[kidx[k]][j] = Fraction(v)
    for i in range(m):
        rows[i][m + i] = Fraction(1)
    pivots = _eliminate(rows)
    if len(pivots) != m or any(col >= m for col, _ in pivots):
        raise InconsistentSystem("change of basis matrix is singular")
    # back substitution to reduced form
    pivots.sort(key=lambda p: p[0])
    reduced = {}
    for col, row in reversed(pivots):
        row = dict(row)
        for c in [c for c in row if c != col and c < m]:
            f = row.pop(c)
            for cc, vv in reduced[c].items():
                if cc == c:
                    continue
                s = row.get(cc, 0) - f * vv
                if s:
                    row[cc] = s
                else:
                    row.pop(cc, None)
        reduced[col] = row
    # reduced[j] now reads: e_j = sum_i row[m+i] * old_i ; invert the roles
    out = {k: {} for k in keys}
    for j in range(m):
        for c, v in reduced[j].items():
            if c >= m:
                out[keys[c - m]][j] = v
    return out


def solve(equations, nvars):
    """Solve sum_j a_ij y_j = b_i exactly; ``equations`` is a list of (row dict, rhs).

    Returns the unique solution as a list.  Raises InconsistentSystem when the
    system has no solution or is underdetermined.
    """
    rows = []
    for coeffs, rhs in equations:
        r = {j: Fraction(v) for j, v in coeffs.items() if v}
        if rhs:
            r[nvars] = Fraction(rhs)
        rows.append(r)
    pivots = _eliminate(rows)
    if any(col == nvars for col, _ in pivots):
        raise InconsistentSystem("linear system has no solution")
    if len(pivots) != nvars:
        raise InconsistentSystem("linear system is underdetermined")
    pivots.sort(key=lambda p: p[0])
    sol = [Fraction(0)] * nvars
    for col, row in reversed(pivots):
        val = row.get(nvars, Fraction(0))
        for c, v in row.items():
            if c != col and c != nvars:
                val -= v * sol[c]
        sol[col] = val
    return sol
