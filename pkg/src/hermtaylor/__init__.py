"""Exact augmented Taylor factorizations of Hermite subdivision masks."""
from __future__ import annotations

from .algebra import LaurentMatrix, LaurentPoly, Poly, format_rational, parse_rational
from .combinatorics import (
    coeff_vectors,
    gamma_coeff,
    gregory_g,
    p_cauchy,
    stirling1,
    stirling1_signed,
    stirling2,
)
from .errors import (
    FormatError,
    HypothesisViolation,
    InfeasibleConstruction,
    InsufficientSpectralOrder,
    NotExactlyDivisible,
    QuadratureError,
    SingularSymbol,
)
from .factorization import FactorizationResult, factor_chain, factor_direct, rank1_step, verify_factorization
from .operators import DiffOp, augmented_taylor, delta_block, gauss_step, taylor
from .remainder import AnalyticFn, interpret_check, remainder
from .spectral import SpectralSystem, eigenspace_constants, mask_construct, spectral_check, spectral_solve
from .subdivision import Mask, VecSeq, hermite_iterate, mask_apply

__version__ = "0.1.0"

__all__ = [
    "AnalyticFn", "DiffOp", "FactorizationResult", "FormatError", "HypothesisViolation",
    "InfeasibleConstruction", "InsufficientSpectralOrder", "LaurentMatrix", "LaurentPoly",
    "Mask", "NotExactlyDivisible", "Poly", "QuadratureError", "SingularSymbol",
    "SpectralSystem", "VecSeq", "augmented_taylor", "coeff_vectors", "delta_block",
    "eigenspace_constants", "factor_chain", "factor_direct", "format_rational", "gamma_coeff",
    "gauss_step", "gregory_g", "hermite_iterate", "interpret_check", "mask_apply",
    "mask_construct", "p_cauchy", "parse_rational", "rank1_step", "remainder",
    "spectral_check", "spectral_solve", "stirling1", "stirling1_signed", "stirling2",
    "taylor", "verify_factorization",
]
