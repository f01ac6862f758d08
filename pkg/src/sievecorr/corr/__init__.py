"""Correlations of sieve functions and the pieces of their exact breakdown."""

from .ap import ap_discrepancy_sum
from .correlation import (
    CorrelationTable,
    correlation_all_shifts,
    correlation_direct,
    open_correlation_exact,
    symmetrized_correlation,
)
from .fourier import (
    SigmaDecomposition,
    cotangent_remainder,
    fourier_truncated_remainder,
    sigma_components,
)
from .kloosterman import (
    BilinearReport,
    BilinearValue,
    bilinear_magnitude_report,
    envelope,
    kloosterman_bilinear,
    kloosterman_bilinear_brute,
    sign_ensemble,
)
from .terms import (
    CorrelationBreakdown,
    bernoulli_remainder,
    bernoulli_remainder_blockwise,
    decompose_correlation,
    floor_main_term,
    integer_point_correction,
    smooth_main_term,
)

__all__ = [
    "BilinearReport",
    "BilinearValue",
    "CorrelationBreakdown",
    "CorrelationTable",
    "SigmaDecomposition",
    "ap_discrepancy_sum",
    "bernoulli_remainder",
    "bernoulli_remainder_blockwise",
    "bilinear_magnitude_report",
    "correlation_all_shifts",
    "correlation_direct",
    "cotangent_remainder",
    "decompose_correlation",
    "envelope",
    "floor_main_term",
    "fourier_truncated_remainder",
    "integer_point_correction",
    "kloosterman_bilinear",
    "kloosterman_bilinear_brute",
    "open_correlation_exact",
    "sigma_components",
    "sign_ensemble",
    "smooth_main_term",
    "symmetrized_correlation",
]
