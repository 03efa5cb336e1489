"""Parabolic Kazhdan-Lusztig R-polynomials of the symmetric group."""

from .perm import Permutation, compose, identity, inverse, length, right_descents, right_mult_adjacent
from .quotient import (
    GeneratorSubset,
    ParabolicInterval,
    bruhat_leq,
    bruhat_leq_quotient,
    enumerate_quotient,
    is_minimal_rep,
)
from .polynomial import IntPolynomial
from .statistics import PairContext, b_stat, make_context
from .deodhar import DescentPolicy, RContext, XMode, r_polynomial
from .closed_form import (
    brenti_double,
    brenti_single,
    conjecture_formula,
    r_closed,
    triple_formula,
)

__all__ = [
    "Permutation", "compose", "identity", "inverse", "length", "right_descents",
    "right_mult_adjacent",
    "GeneratorSubset", "ParabolicInterval", "bruhat_leq", "bruhat_leq_quotient",
    "enumerate_quotient", "is_minimal_rep",
    "IntPolynomial",
    "PairContext", "b_stat", "make_context",
    "DescentPolicy", "RContext", "XMode", "r_polynomial",
    "brenti_double", "brenti_single", "conjecture_formula", "r_closed", "triple_formula",
]

__version__ = "0.1.0"
