"""Decay-rate experiments on ladders of radii"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from src.exponents import (
    ExponentPoint,
    ProblemDims,
    RegionSpec,
    alpha_123,
    alpha_star,
    find_xi_witness,
    normalize_beta,
    q_double_star,
    q_star,
    q_star_lower,
    region_slice,
    thm1_threshold,
    thm2_branch,
    thm2_threshold,
)
from src.potentials import RadialPotential
from src.utils.errors import DomainError, ThresholdExponentError
from src.utils.helpers import fit_loglog_slope, nearly_equal

from .estimates import estimate_R, estimate_S
from .families import FamilySweep
from .grid import LogGrid


def _on_threshold(q: float, threshold: float) -> None:
    if nearly_equal(q, threshold):
        raise ThresholdExponentError(f"q={q!r} is the threshold exponent; no decay is predicted")


def _zero_side_exponent(
    alpha: float, beta: float, gamma: Optional[float], q: float, dims: ProblemDims
) -> float:
    p, N = dims.p, dims.N
    if gamma is None:
        if not alpha > alpha_star(beta, dims):
            raise DomainError(
                f"no decay near zero: alpha={alpha!r} <= alpha*(beta)={alpha_star(beta, dims)!r}"
            )
        upper = q_star(alpha, beta, dims)
        _on_threshold(q, upper)
        if not max(1.0, p * beta) < q < upper:
            raise DomainError(f"q={q!r} outside the admissible range ({max(1.0, p * beta)!r}, {upper!r})")
        return (N - p) * (upper - q) / p

    region = RegionSpec.build(beta, gamma, dims)
    interval = region_slice(alpha, region, dims)
    _on_threshold(q, interval.lower)
    _on_threshold(q, interval.upper)
    witness = find_xi_witness(ExponentPoint(alpha, q), beta, region.gamma, dims)
    if witness is None:
        raise DomainError(f"(alpha, q)=({alpha!r}, {q!r}) lies outside the region for gamma={gamma!r}")
    a, b = normalize_beta(alpha, region.beta, region.gamma)
    g = region.gamma
    D = p * (N - 1) - (p - 1.0) * g
    C = p * p * (a + N) - p * ((p - 1.0) * g + p) * b
    return (C + witness.xi * p * (g - p) - D * q) / p**2


def _infinity_side_exponent(
    alpha: float, beta: float, gamma: Optional[float], q: float, dims: ProblemDims
) -> float:
    p, N = dims.p, dims.N
    if gamma is None:
        threshold = thm1_threshold(alpha, beta, dims)
        _on_threshold(q, threshold)
        if not q > threshold:
            raise DomainError(f"q={q!r} does not exceed the threshold {threshold!r}")
        return (N - p) * (q_star(alpha, beta, dims) - q) / p

    threshold = thm2_threshold(alpha, beta, gamma, dims)
    _on_threshold(q, threshold)
    if not q > threshold:
        raise DomainError(f"q={q!r} does not exceed the threshold {threshold!r}")
    a, b = normalize_beta(alpha, beta, gamma)
    nu = dims.decay_exponent(gamma)
    branch = thm2_branch(a, b, gamma, dims)
    if branch == "q_double_star":
        return nu * (q_double_star(a, b, gamma, dims) - q)
    if branch == "q_star_lower":
        return nu * (q_star_lower(a, b, gamma, dims) - q)

    _, alpha_2, alpha_3 = alpha_123(b, gamma, dims)
    if nearly_equal(b, 1.0):
        return a - nu * (q - p)
    if b > 1.0 / p:
        return a - alpha_2 - nu * (q - p * b)
    return a - alpha_3 - nu * (q - 1.0)


def theoretical_decay_exponent(
    alpha: float,
    beta: float,
    gamma: Optional[float],
    q: float,
    side: str,
    dims: ProblemDims,
) -> float:
    """
    Exponent delta with S(q, R) <= C R^delta predicted by the vanishing criteria.

    Positive near zero (the ball piece vanishes as R -> 0), negative at
    infinity (the exterior piece vanishes as R -> inf).

    Args:
        alpha: Growth exponent of the descriptor on that side
        beta: Weight exponent of the descriptor
        gamma: Lower-bound exponent of V, or None
        q: Exponent strictly inside (zero) or beyond (infinity) the admissible threshold
        side: "zero" or "infinity"
        dims: Problem dimensions

    Returns:
        delta

    Raises:
        ThresholdExponentError: if q sits on the threshold
        DomainError: if q is on the wrong side of it
    """
    if side == "zero":
        return _zero_side_exponent(alpha, beta, gamma, q, dims)
    if side == "infinity":
        return _infinity_side_exponent(alpha, beta, gamma, q, dims)
    raise DomainError(f"side must be 'zero' or 'infinity', got {side!r}")


@dataclass(frozen=True)
class DecayExperimentConfig:
    """Inputs of one R-ladder experiment"""

    V: RadialPotential
    K: RadialPotential
    dims: ProblemDims
    q: float
    side: str
    radii: Tuple[float, ...]
    alpha: float
    beta: float
    gamma: Optional[float] = None
    sweep: Optional[FamilySweep] = None
    grid: LogGrid = field(default_factory=LogGrid)
    tolerance: float = 0.3
    bilinear: bool = False
    refine: bool = True

    def family(self) -> FamilySweep:
        return self.sweep or FamilySweep.around(self.dims)


@dataclass
class DecayExperimentResult:
    q: float
    side: str
    radii: List[float]
    estimates: List[float]
    slope: float
    delta: float
    passed: bool
    monotone: bool
    diagnostics: List[str] = field(default_factory=list)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} q={self.q:g} side={self.side} slope={self.slope:.4f} delta={self.delta:.4f}"

    def as_dict(self) -> Dict:
        return {
            "q": self.q,
            "side": self.side,
            "radii": self.radii,
            "estimates": self.estimates,
            "slope": self.slope,
            "delta": self.delta,
            "passed": self.passed,
            "monotone": self.monotone,
            "diagnostics": self.diagnostics,
        }


def _run_ladder(config: DecayExperimentConfig) -> Tuple[List[float], List[float]]:
    radii = sorted(float(r) for r in config.radii)
    if len(radii) < 2:
        raise DomainError("an R-ladder needs at least two radii")
    sweep = config.family()
    args = (config.V, config.K, sweep, config.dims)
    estimates = []
    for R in radii:
        if config.bilinear:
            value = estimate_R(config.q, R, config.side, *args, grid=config.grid, refine=config.refine).value
        else:
            value = estimate_S(config.q, R, config.side, *args, grid=config.grid, refine=config.refine).value
        estimates.append(value)
    return radii, estimates


def _ladder_monotone(estimates: List[float], side: str) -> Tuple[bool, List[str]]:
    """Nondecreasing in R near zero, nonincreasing at infinity"""
    diagnostics = []
    for i in range(len(estimates) - 1):
        lo, hi = estimates[i], estimates[i + 1]
        ok = hi >= lo * (1.0 - 1e-9) if side == "zero" else hi <= lo * (1.0 + 1e-9)
        if not ok:
            diagnostics.append(
                f"estimate ladder not monotone between rungs {i} and {i + 1}: {lo:.6g} -> {hi:.6g}"
            )
    return not diagnostics, diagnostics


def decay_slope_experiment(config: DecayExperimentConfig) -> DecayExperimentResult:
    """
    Fit the log-log slope of the estimate ladder and compare it with delta.

    Estimates are lower bounds, so they may decay faster than predicted but
    never slower: near zero the slope must be at least delta - tolerance, at
    infinity at most delta + tolerance.

    Raises:
        ThresholdExponentError: if q is the threshold exponent; the ladder is not run
    """
    delta = theoretical_decay_exponent(
        config.alpha, config.beta, config.gamma, config.q, config.side, config.dims
    )
    radii, estimates = _run_ladder(config)
    monotone, diagnostics = _ladder_monotone(estimates, config.side)
    slope, _ = fit_loglog_slope(radii, estimates)

    if config.side == "zero":
        rate_ok = slope >= delta - config.tolerance
    else:
        rate_ok = slope <= delta + config.tolerance
    if not rate_ok:
        diagnostics.append(
            f"slope {slope:.4f} decays slower than delta={delta:.4f} (tolerance {config.tolerance})"
        )

    result = DecayExperimentResult(
        q=config.q,
        side=config.side,
        radii=radii,
        estimates=estimates,
        slope=slope,
        delta=delta,
        passed=monotone and rate_ok,
        monotone=monotone,
        diagnostics=diagnostics,
    )
    log = logger.info if result.passed else logger.warning
    log(result.summary())
    return result


@dataclass
class SharpnessProbe:
    """S-ladder at the threshold exponent, where no decay is expected"""

    q: float
    side: str
    radii: List[float]
    estimates: List[float]
    slope: float
    non_vanishing: bool

    def as_dict(self) -> Dict:
        return {
            "q": self.q,
            "side": self.side,
            "radii": self.radii,
            "estimates": self.estimates,
            "slope": self.slope,
            "non_vanishing": self.non_vanishing,
        }


def threshold_sharpness_probe(
    config: DecayExperimentConfig, threshold: Optional[float] = None
) -> SharpnessProbe:
    """
    Run the ladder at a threshold exponent, ignoring config.q.

    At the threshold the estimates should neither vanish nor blow up, so the
    fitted slope is expected within the tolerance of zero.

    Args:
        config: Ladder settings
        threshold: Exponent to probe; q*(alpha, beta) when omitted

    Raises:
        DomainError: if the threshold is not a finite exponent above 1
    """
    q = threshold if threshold is not None else q_star(config.alpha, config.beta, config.dims)
    if not (q > 1.0 and np.isfinite(q)):
        raise DomainError(f"threshold exponent q={q!r} is not a finite exponent above 1")
    radii, estimates = _run_ladder(replace(config, q=q))
    slope, _ = fit_loglog_slope(radii, estimates)
    probe = SharpnessProbe(
        q=q,
        side=config.side,
        radii=radii,
        estimates=estimates,
        slope=slope,
        non_vanishing=bool(abs(slope) < config.tolerance),
    )
    logger.info(f"sharpness probe at q={q:g} ({config.side}): slope={slope:.4f}")
    return probe


def ladder(start: float, factor: float, n: int) -> Tuple[float, ...]:
    """Geometric radii start, start*factor, ..."""
    return tuple(float(start * factor**k) for k in range(n))
