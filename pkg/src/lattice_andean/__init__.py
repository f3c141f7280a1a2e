"""Exact combinatorics of codimension-two lattice basis ideals.

Computes associated primes, toral/Andean classification, explicit monomial
parts of monomial-prime primary components, Andean arrangements, and
holonomicity verdicts for bivariate Horn hypergeometric systems -- all in
exact arithmetic, with a brute-force lattice-graph oracle that independently
certifies every closed-form result.
"""

from .errors import (
    BudgetError,
    CapExceeded,
    EmptySlice,
    InputError,
    InvalidA,
    LatticeAndeanError,
    MalformedInput,
    NoSolution,
    NoStabilization,
    NotALeftTurn,
    NotAndean,
    NotMonomialPrime,
    NotToral,
    OrientationError,
    RankDeficient,
    WindowTooLarge,
)
from .matrix_core import (
    AMatrix,
    BMatrix,
    PairAnalysis,
    analyze_pairs,
    cokernel,
    elementary_divisors,
    has_nonneg_column_span_direction,
    horn_hypothesis_ok,
    is_valid_grading,
    parse_matrix,
    smith_normal_form,
)
from .monomials import MonomialIdeal

__all__ = [
    "AMatrix",
    "BMatrix",
    "BudgetError",
    "CapExceeded",
    "EmptySlice",
    "InputError",
    "InvalidA",
    "LatticeAndeanError",
    "MalformedInput",
    "MonomialIdeal",
    "NoSolution",
    "NoStabilization",
    "NotALeftTurn",
    "NotAndean",
    "NotMonomialPrime",
    "NotToral",
    "OrientationError",
    "PairAnalysis",
    "RankDeficient",
    "WindowTooLarge",
    "analyze_pairs",
    "cokernel",
    "elementary_divisors",
    "has_nonneg_column_span_direction",
    "horn_hypothesis_ok",
    "is_valid_grading",
    "parse_matrix",
    "smith_normal_form",
]
