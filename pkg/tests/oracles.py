"""Brute-force references kept independent of the code paths they check."""

from fractions import Fraction
from itertools import product
from math import factorial


def compositions(total, parts):
    """n-tuples of nonnegative ints summing to ``total``, by brute force."""
    return [t for t in product(range(total + 1), repeat=parts) if sum(t) == total]


def count_weight_minus_one(multidegree):
    """Number of weight -1 differential monomials with the given multidegree.

    Each generator i contributes d_i factors whose orders form a multiset; the
    orders over all factors must sum to (degree - 1).
    """
    from itertools import combinations_with_replacement

    degree = sum(multidegree)
    per_gen = []
    for d in multidegree:
        per_gen.append([c for c in combinations_with_replacement(range(degree), d)])
    count = 0
    for choice in product(*per_gen):
        if sum(sum(c) for c in choice) == degree - 1:
            count += 1
    return count


def leibniz_product(u, v):
    """u o v on dict-of-sorted-tuples elements, written out directly."""
    out = {}
    for mu, cu in u.items():
        for pos in range(len(mu)):
            g, k = mu[pos]
            raised = list(mu)
            raised[pos] = (g, k + 1)
            for mv, cv in v.items():
                m = tuple(sorted(raised + list(mv)))
                out[m] = out.get(m, 0) + cu * cv
    return {m: c for m, c in out.items() if c}


def poly_eval_dense(coeffs, x):
    """Horner evaluation; coeffs constant-first."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def exp_coefficients(n):
    return [Fraction(1, factorial(k)) for k in range(n + 1)]


def binomial_half(n):
    """Coefficients of sqrt(1 + x) = sum binom(1/2, k) x^k."""
    out = []
    c = Fraction(1)
    for k in range(n + 1):
        out.append(c)
        c = c * (Fraction(1, 2) - k) / (k + 1)
    return out


def taylor_shift(coeffs, c):
    """Coefficients of p(c + u) in u for p with constant-first coeffs."""
    n = len(coeffs)
    out = [Fraction(0)] * n
    binom = [[1]]
    for i in range(1, n):
        prev = binom[-1]
        binom.append([1] + [prev[j] + prev[j + 1] for j in range(len(prev) - 1)] + [1])
    for i, a in enumerate(coeffs):
        for j in range(i + 1):
            out[j] += Fraction(a) * binom[i][j] * Fraction(c) ** (i - j)
    return out
