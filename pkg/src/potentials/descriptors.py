"""Extract optimal power-type descriptors from concrete potentials"""

from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
from loguru import logger

from src.exponents import (
    AdmissibleRange,
    InfinityDescriptor,
    ProblemDims,
    ZeroDescriptor,
    thm0_range,
    thm1_threshold,
    thm2_threshold,
    thm3_range,
)
from src.utils.errors import AssumptionViolationError, DomainError, HypothesisViolationError
from src.utils.helpers import nearly_equal

from .model import RadialPotential, TabulatedPotential

BetaPolicy = Union[str, float]
SCORE_TOLERANCE = 1e-9


def _check_policy(beta_policy: BetaPolicy) -> Optional[float]:
    """Return the fixed beta, or None for the "best" policy"""
    if isinstance(beta_policy, str):
        if beta_policy != "best":
            raise DomainError(f"beta policy must be 'best' or a number in [0, 1], got {beta_policy!r}")
        return None
    beta = float(beta_policy)
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"fixed beta must lie in [0, 1], got {beta!r}")
    return beta


def _check_K(K: RadialPotential, side: str, radii: np.ndarray) -> Tuple[float, float]:
    k, b = K.leading_term(side)
    if not k > 0.0 or np.any(K(radii) <= 0.0):
        raise AssumptionViolationError(f"K must be strictly positive near {side}")
    return k, b


def _sample_radii(V: RadialPotential, K: RadialPotential, side: str, radius: float) -> np.ndarray:
    """Tabulated nodes when either potential is tabulated, a log grid otherwise"""
    for potential in (V, K):
        if isinstance(potential, TabulatedPotential):
            radii = potential.sample_radii(side, radius)
            if len(radii):
                return radii
    return RadialPotential.sample_radii(V, side, radius)


def _ratio_sup(
    V: RadialPotential,
    K: RadialPotential,
    alpha: float,
    beta: float,
    side: str,
    radius: float,
) -> float:
    """esssup of K / (r^alpha V^beta) on the descriptor side of radius"""
    k, _ = K.leading_term(side)
    v, _ = V.leading_term(side)
    limit = k if beta == 0.0 else k / v**beta
    if K.exact_power and V.exact_power:
        return float(limit)
    r = _sample_radii(V, K, side, radius)
    weight = np.ones_like(r) if beta == 0.0 else V(r) ** beta
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = K(r) / (r**alpha * weight)
    if not np.all(np.isfinite(ratio)):
        raise AssumptionViolationError(f"K / (r^alpha V^beta) is unbounded near {side}")
    return float(max(limit, ratio.max())) if np.isfinite(limit) else float(ratio.max())


def _lower_inf(V: RadialPotential, gamma: float, side: str, radius: float) -> float:
    """essinf of r^gamma V on the descriptor side of radius"""
    v, _ = V.leading_term(side)
    if V.exact_power:
        return float(v)
    r = V.sample_radii(side, radius)
    return float(min(v, np.min(r**gamma * V(r))))


def _candidate_betas(p: float, crossings: Iterable[float] = ()) -> List[float]:
    grid = set(np.round(np.linspace(0.0, 1.0, 101), 12).tolist())
    grid.update({0.0, 1.0 / p, 1.0})
    grid.update(float(c) for c in crossings if 0.0 <= c <= 1.0)
    return sorted(grid)


def _zero_descriptor_for(
    V: RadialPotential,
    K: RadialPotential,
    beta: float,
    dims: ProblemDims,
    radius: float,
) -> ZeroDescriptor:
    _, b = K.leading_term("zero")
    v, e = V.leading_term("zero")
    a = -e
    if v == 0.0:
        Lambda = _ratio_sup(V, K, b, 0.0, "zero", radius)
        return ZeroDescriptor(R1=radius, alpha0=b, beta0=0.0, Lambda0=Lambda)

    alpha = b + a * beta
    gamma = lam = None
    if a >= dims.p or nearly_equal(a, dims.p):
        gamma = max(a, dims.p)
        lam = _lower_inf(V, gamma, "zero", radius)
    return ZeroDescriptor(
        R1=radius,
        alpha0=alpha,
        beta0=beta,
        Lambda0=_ratio_sup(V, K, alpha, beta, "zero", radius),
        gamma0=gamma,
        lambda0=lam,
    )


def _zero_score(descriptor: ZeroDescriptor, dims: ProblemDims) -> Optional[AdmissibleRange]:
    try:
        if descriptor.gamma0 is not None and dims.N >= 3:
            return thm3_range(descriptor, dims)
        return thm0_range(descriptor, dims)
    except HypothesisViolationError:
        return None


def fit_zero_descriptor(
    V: RadialPotential,
    K: RadialPotential,
    dims: ProblemDims,
    beta_policy: BetaPolicy = "best",
    radius: Optional[float] = None,
) -> ZeroDescriptor:
    """
    Optimal bounds K <= Lambda0 r^alpha0 V^beta0 and r^gamma0 V >= lambda0 near zero.

    For V ~ v r^-a and K ~ k r^b the largest admissible alpha0 is b + a*beta0,
    and the largest valid gamma0 is a when a >= p.

    Args:
        V: Potential V >= 0
        K: Weight K > 0
        dims: Problem dimensions
        beta_policy: A fixed beta0 in [0, 1], or "best"
        radius: R1; defaults to the potential's own choice

    Returns:
        ZeroDescriptor
    """
    fixed = _check_policy(beta_policy)
    radius = radius if radius is not None else min(V.default_radius("zero"), K.default_radius("zero"))
    _check_K(K, "zero", K.sample_radii("zero", radius, n=101))

    v, e = V.leading_term("zero")
    if v == 0.0:
        if fixed:
            logger.warning(f"V vanishes near zero, beta0={fixed} replaced by 0")
        return _zero_descriptor_for(V, K, 0.0, dims, radius)
    if fixed is not None:
        return _zero_descriptor_for(V, K, fixed, dims, radius)
    if -e <= 0.0:
        # V bounded near zero
        return _zero_descriptor_for(V, K, 0.0, dims, radius)

    best: Optional[ZeroDescriptor] = None
    best_range: Optional[AdmissibleRange] = None
    for beta in _candidate_betas(dims.p):
        descriptor = _zero_descriptor_for(V, K, beta, dims, radius)
        interval = _zero_score(descriptor, dims)
        if interval is None or interval.empty:
            continue
        if best_range is None or _wider(interval, best_range):
            best, best_range = descriptor, interval

    if best is None:
        logger.warning("no beta0 gives a nonempty range near zero, falling back to beta0=0")
        best = _zero_descriptor_for(V, K, 0.0, dims, radius)
    logger.debug(f"zero descriptor: {best}")
    return best


def _wider(candidate: AdmissibleRange, incumbent: AdmissibleRange) -> bool:
    """Larger upper end first, then smaller lower end; near-ties keep the incumbent"""
    if not nearly_equal(candidate.upper, incumbent.upper, SCORE_TOLERANCE):
        return candidate.upper > incumbent.upper
    if not nearly_equal(candidate.lower, incumbent.lower, SCORE_TOLERANCE):
        return candidate.lower < incumbent.lower
    return False


def _infinity_descriptor_for(
    V: RadialPotential,
    K: RadialPotential,
    beta: float,
    dims: ProblemDims,
    radius: float,
) -> InfinityDescriptor:
    _, b = K.leading_term("infinity")
    v, e = V.leading_term("infinity")
    a = -e
    if v == 0.0:
        Lambda = _ratio_sup(V, K, b, 0.0, "infinity", radius)
        return InfinityDescriptor(R2=radius, alphaInf=b, betaInf=0.0, LambdaInf=Lambda)

    alpha = b + a * beta
    gamma = lam = None
    if a <= dims.p or nearly_equal(a, dims.p):
        gamma = min(a, dims.p)
        lam = _lower_inf(V, gamma, "infinity", radius)
    return InfinityDescriptor(
        R2=radius,
        alphaInf=alpha,
        betaInf=beta,
        LambdaInf=_ratio_sup(V, K, alpha, beta, "infinity", radius),
        gammaInf=gamma,
        lambdaInf=lam,
    )


def _infinity_threshold(descriptor: InfinityDescriptor, dims: ProblemDims) -> float:
    if descriptor.gammaInf is not None:
        return thm2_threshold(descriptor.alphaInf, descriptor.betaInf, descriptor.gammaInf, dims)
    return thm1_threshold(descriptor.alphaInf, descriptor.betaInf, dims)


def fit_infinity_descriptor(
    V: RadialPotential,
    K: RadialPotential,
    dims: ProblemDims,
    beta_policy: BetaPolicy = "best",
    radius: Optional[float] = None,
) -> InfinityDescriptor:
    """
    Optimal bounds K <= LambdaInf r^alphaInf V^betaInf and r^gammaInf V >= lambdaInf at infinity.

    alphaInf = b + a*betaInf is the smallest admissible growth exponent; the
    smallest valid gammaInf is a when a <= p. The "best" policy minimizes the
    resulting lower end of the q2 range, preferring larger betaInf on ties.
    """
    fixed = _check_policy(beta_policy)
    if radius is None:
        radius = max(V.default_radius("infinity"), K.default_radius("infinity"))
    _check_K(K, "infinity", K.sample_radii("infinity", radius, n=101))

    v, e = V.leading_term("infinity")
    if v == 0.0:
        if fixed:
            logger.warning(f"V vanishes at infinity, betaInf={fixed} replaced by 0")
        return _infinity_descriptor_for(V, K, 0.0, dims, radius)
    if fixed is not None:
        return _infinity_descriptor_for(V, K, fixed, dims, radius)

    _, b = K.leading_term("infinity")
    a = -e
    crossings = [(b + dims.N) / (dims.N - a)] if a != dims.N else []

    best: Optional[InfinityDescriptor] = None
    best_threshold = np.inf
    for beta in _candidate_betas(dims.p, crossings):
        descriptor = _infinity_descriptor_for(V, K, beta, dims, radius)
        threshold = _infinity_threshold(descriptor, dims)
        if threshold < best_threshold or nearly_equal(threshold, best_threshold, SCORE_TOLERANCE):
            best, best_threshold = descriptor, min(threshold, best_threshold)

    logger.debug(f"infinity descriptor: {best}")
    return best
