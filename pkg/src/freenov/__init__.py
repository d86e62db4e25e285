"""Exact computations in free Novikov algebras."""

from .errors import NovikovError
from .evaluation import (
    ALambdaElement,
    circ,
    eval_lambda,
    eval_s,
    find_nonvanishing_specialization,
    independence_rank,
    leading_f,
    lemma1_fg,
    reconstruct,
)
from .freiheit import (
    DifferentialPolynomial,
    extract_diffpoly,
    find_regular_point,
    freiheitssatz_witness,
    residual,
    solve_ode,
)
from .novikov import NovikovElement, expand_word, inject, multilinearize, parse, product, to_tableau_basis
from .poly import AffineForm, PrefixForm, Monomial, Polynomial, gamma, leading_term, order_cmp
from .series import PowerSeries
from .tableau import NovikovTableau, enumerate_tableaux, multilinear_basis, validate, word

__version__ = "0.1.0"

__all__ = [
    "NovikovError",
    "ALambdaElement",
    "circ",
    "eval_lambda",
    "eval_s",
    "find_nonvanishing_specialization",
    "independence_rank",
    "leading_f",
    "lemma1_fg",
    "reconstruct",
    "DifferentialPolynomial",
    "extract_diffpoly",
    "find_regular_point",
    "freiheitssatz_witness",
    "residual",
    "solve_ode",
    "NovikovElement",
    "expand_word",
    "inject",
    "multilinearize",
    "parse",
    "product",
    "to_tableau_basis",
    "AffineForm",
    "PrefixForm",
    "Monomial",
    "Polynomial",
    "gamma",
    "leading_term",
    "order_cmp",
    "PowerSeries",
    "NovikovTableau",
    "enumerate_tableaux",
    "multilinear_basis",
    "validate",
    "word",
]
