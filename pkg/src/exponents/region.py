"""The open region A_{beta,gamma} of the alpha-q plane and its boundary polylines"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.utils.errors import DomainError, UndefinedAtGammaError
from src.utils.helpers import nearly_equal

from .calculus import (
    AdmissibleRange,
    ExponentPoint,
    ProblemDims,
    RegionCase,
    alpha_123,
    classify_gamma,
    normalize_beta,
    q_double_star,
    q_star,
    q_star_lower,
)


@dataclass(frozen=True)
class RegionSpec:
    """
    Region A_{beta,gamma} with its case tag.

    Build instances through ``RegionSpec.build`` so that gamma values within
    tolerance of p, N or p(N-1)/(p-1) are snapped onto them.
    """

    beta: float
    gamma: float
    case: RegionCase

    @classmethod
    def build(cls, beta: float, gamma: float, dims: ProblemDims) -> "RegionSpec":
        if beta > 1.0:
            raise DomainError(f"beta must not exceed 1, got {beta!r}")
        case = classify_gamma(gamma, dims)
        if case is RegionCase.AT_N:
            gamma = float(dims.N)
        elif case is RegionCase.AT_STAR:
            gamma = dims.gamma_star_star
        elif nearly_equal(gamma, dims.p):
            gamma = dims.p
        return cls(beta=float(beta), gamma=float(gamma), case=case)


def region_membership(point: ExponentPoint, region: RegionSpec, dims: ProblemDims) -> bool:
    """
    Decide whether (alpha, q) lies in the open region A_{beta,gamma}.

    Every inequality is strict, so boundary points are excluded.
    """
    alpha, beta = normalize_beta(point.alpha, region.beta, region.gamma)
    q, gamma, p, N = point.q, region.gamma, dims.p, dims.N
    floor = max(1.0, p * beta)

    if region.case is RegionCase.BELOW_N:
        upper = min(q_star_lower(alpha, beta, gamma, dims), q_double_star(alpha, beta, gamma, dims))
        return floor < q < upper
    if region.case is RegionCase.AT_N:
        return floor < q < q_double_star(alpha, beta, gamma, dims) and alpha > -(1.0 - beta) * N
    if region.case is RegionCase.BETWEEN_N_AND_STAR:
        lower = max(floor, q_star_lower(alpha, beta, gamma, dims))
        return lower < q < q_double_star(alpha, beta, gamma, dims)
    if region.case is RegionCase.AT_STAR:
        lower = max(floor, q_star_lower(alpha, beta, gamma, dims))
        return lower < q and alpha > -(1.0 - beta) * gamma
    lower = max(floor, q_star_lower(alpha, beta, gamma, dims), q_double_star(alpha, beta, gamma, dims))
    return lower < q


def region_slice(alpha: float, region: RegionSpec, dims: ProblemDims) -> AdmissibleRange:
    """The exponents q with (alpha, q) in A_{beta,gamma}, as an open interval"""
    alpha, beta = normalize_beta(alpha, region.beta, region.gamma)
    gamma, p, N = region.gamma, dims.p, dims.N
    floor = max(1.0, p * beta)
    case = region.case

    if case is RegionCase.BELOW_N:
        upper = min(q_star_lower(alpha, beta, gamma, dims), q_double_star(alpha, beta, gamma, dims))
        return AdmissibleRange(floor, upper)
    if case is RegionCase.AT_N:
        if not alpha > -(1.0 - beta) * N:
            return AdmissibleRange(floor, floor)
        return AdmissibleRange(floor, q_double_star(alpha, beta, gamma, dims))
    if case is RegionCase.BETWEEN_N_AND_STAR:
        lower = max(floor, q_star_lower(alpha, beta, gamma, dims))
        return AdmissibleRange(lower, q_double_star(alpha, beta, gamma, dims))
    if case is RegionCase.AT_STAR:
        lower = max(floor, q_star_lower(alpha, beta, gamma, dims))
        if not alpha > -(1.0 - beta) * gamma:
            return AdmissibleRange(lower, lower)
        return AdmissibleRange(lower)
    lower = max(floor, q_star_lower(alpha, beta, gamma, dims), q_double_star(alpha, beta, gamma, dims))
    return AdmissibleRange(lower)


def threshold_lines(region: RegionSpec, dims: ProblemDims) -> Dict[str, Optional[Dict[str, float]]]:
    """
    Slope and intercept of q*, q_* and q_** as affine functions of alpha.

    Lines that are undefined at the region's gamma map to None.
    """
    functions = {
        "q_star": lambda a, b: q_star(a, b, dims),
        "q_star_lower": lambda a, b: q_star_lower(a, b, region.gamma, dims),
        "q_double_star": lambda a, b: q_double_star(a, b, region.gamma, dims),
    }
    lines: Dict[str, Optional[Dict[str, float]]] = {}
    for name, fn in functions.items():
        try:
            a0, b0 = normalize_beta(0.0, region.beta, region.gamma)
            a1, b1 = normalize_beta(1.0, region.beta, region.gamma)
            at_zero = fn(a0, b0)
            lines[name] = {"slope": fn(a1, b1) - at_zero, "intercept": at_zero}
        except UndefinedAtGammaError:
            lines[name] = None
    return lines


def region_corners(region: RegionSpec, dims: ProblemDims) -> Dict[str, float]:
    """alpha_1, alpha_2, alpha_3 and max{alpha_2, alpha_3} in the caller's alpha coordinate"""
    beta = max(region.beta, 0.0)
    shift = min(region.beta, 0.0) * region.gamma
    alpha_1, alpha_2, alpha_3 = (a + shift for a in alpha_123(beta, region.gamma, dims))
    return {
        "alpha_1": alpha_1,
        "alpha_2": alpha_2,
        "alpha_3": alpha_3,
        "max_alpha_2_alpha_3": max(alpha_2, alpha_3),
    }


@dataclass
class RegionBoundary:
    """Sampled lower and upper boundary of A_{beta,gamma} over an alpha window"""

    region: RegionSpec
    alphas: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    corners: Dict[str, float]
    lines: Dict[str, Optional[Dict[str, float]]]
    dropped: List[float] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        """CSV-ready table; +inf upper bounds become missing values"""
        upper = np.where(np.isfinite(self.upper), self.upper, np.nan)
        return pd.DataFrame({"alpha": self.alphas, "q_lower": self.lower, "q_upper": upper})

    def metadata(self) -> Dict[str, object]:
        return {
            "case": self.region.case.value,
            "beta": self.region.beta,
            "gamma": self.region.gamma,
            "corners": self.corners,
            "threshold_lines": self.lines,
            "samples": int(len(self.alphas)),
            "dropped_alphas": list(self.dropped),
        }


def region_boundary(
    region: RegionSpec,
    alpha_range: Tuple[float, float],
    n_samples: int,
    dims: ProblemDims,
) -> RegionBoundary:
    """
    Sample the boundary of A_{beta,gamma}.

    Args:
        region: Region to sketch
        alpha_range: Closed alpha window (lo, hi)
        n_samples: Number of equally spaced alpha samples, at least 2
        dims: Problem dimensions

    Returns:
        RegionBoundary; alphas with an empty slice are listed in ``dropped``
    """
    if n_samples < 2:
        raise DomainError(f"need at least two alpha samples, got {n_samples}")
    lo, hi = alpha_range
    if not lo < hi:
        raise DomainError(f"alpha range must be increasing, got {alpha_range!r}")

    alphas, lower, upper, dropped = [], [], [], []
    for alpha in np.linspace(lo, hi, n_samples):
        interval = region_slice(float(alpha), region, dims)
        if interval.empty:
            dropped.append(float(alpha))
            continue
        alphas.append(float(alpha))
        lower.append(interval.lower)
        upper.append(interval.upper if interval.bounded else math.inf)

    return RegionBoundary(
        region=region,
        alphas=np.asarray(alphas, dtype=float),
        lower=np.asarray(lower, dtype=float),
        upper=np.asarray(upper, dtype=float),
        corners=region_corners(region, dims),
        lines=threshold_lines(region, dims),
        dropped=dropped,
    )
