"""Exponent calculus: thresholds, regions, shift witnesses and verdicts"""

from .calculus import (
    ProblemDims,
    ExponentPoint,
    AdmissibleRange,
    RegionCase,
    classify_gamma,
    normalize_beta,
    alpha_star,
    q_star,
    q_star_lower,
    q_double_star,
    alpha_123,
    thm1_threshold,
    thm1_branches,
    thm2_branch,
    thm2_threshold,
    thm2_threshold_direct,
)
from .descriptors import ZeroDescriptor, InfinityDescriptor
from .region import (
    RegionSpec,
    RegionBoundary,
    region_membership,
    region_slice,
    region_boundary,
    region_corners,
    threshold_lines,
)
from .witness import XiInterval, XiWitness, find_xi_witness, validate_xi, xi_interval
from .verdict import Citation, EmbeddingVerdict, compute_verdict, thm0_range, thm3_range

__all__ = [
    "ProblemDims",
    "ExponentPoint",
    "AdmissibleRange",
    "RegionCase",
    "classify_gamma",
    "normalize_beta",
    "alpha_star",
    "q_star",
    "q_star_lower",
    "q_double_star",
    "alpha_123",
    "thm1_threshold",
    "thm1_branches",
    "thm2_branch",
    "thm2_threshold",
    "thm2_threshold_direct",
    "ZeroDescriptor",
    "InfinityDescriptor",
    "RegionSpec",
    "RegionBoundary",
    "region_membership",
    "region_slice",
    "region_boundary",
    "region_corners",
    "threshold_lines",
    "XiInterval",
    "XiWitness",
    "find_xi_witness",
    "validate_xi",
    "xi_interval",
    "Citation",
    "EmbeddingVerdict",
    "compute_verdict",
    "thm0_range",
    "thm3_range",
]
