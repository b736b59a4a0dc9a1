"""
Shift witnesses for region membership.

A point (alpha0, q) belongs to A_{beta0,gamma0} exactly when some xi >= 0
moves (alpha0, beta0) to (alpha0 + xi*gamma0, beta0 + xi) where the
unimproved estimate near zero applies. Every condition is affine in xi, so
the feasible set is an interval obtained by intersecting half-lines.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from loguru import logger

from src.utils.errors import DomainError

from .calculus import ExponentPoint, ProblemDims, RegionCase, alpha_123, normalize_beta
from .region import RegionSpec

CLOSED_TOLERANCE = 1e-12


@dataclass(frozen=True)
class XiInterval:
    """Interval of xi with independently open or closed ends"""

    lower: float
    upper: float
    lower_closed: bool
    upper_closed: bool

    @property
    def empty(self) -> bool:
        if self.lower < self.upper:
            return False
        return not (self.lower == self.upper and self.lower_closed and self.upper_closed)

    def contains(self, xi: float) -> bool:
        above = xi >= self.lower if self.lower_closed else xi > self.lower
        below = xi <= self.upper if self.upper_closed else xi < self.upper
        return above and below

    def as_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "lower_closed": self.lower_closed,
            "upper_closed": self.upper_closed,
        }


@dataclass(frozen=True)
class XiWitness:
    """A valid shift xi together with the interval of all valid shifts"""

    xi: float
    case: RegionCase
    feasible: XiInterval
    subcase: Optional[str] = None
    normalized: bool = False

    def as_dict(self) -> dict:
        return {
            "xi": self.xi,
            "case": self.case.value,
            "subcase": self.subcase,
            "normalized": self.normalized,
            "feasible_interval": self.feasible.as_dict(),
        }


def _tightest(bounds: List[Tuple[float, bool]], lower: bool) -> Tuple[float, bool]:
    """Pick the binding bound; at equal values an open end wins"""
    value = max(b[0] for b in bounds) if lower else min(b[0] for b in bounds)
    closed = all(c for v, c in bounds if v == value)
    return value, closed


def above_star_subcase(alpha: float, beta: float, gamma: float, dims: ProblemDims) -> str:
    """Subcase label (I), (II) or (III) for gamma above p(N-1)/(p-1)"""
    alpha_1, alpha_2, alpha_3 = alpha_123(beta, gamma, dims)
    if alpha <= alpha_1:
        return "I"
    if alpha >= min(alpha_2, alpha_3):
        return "II"
    return "III"


def xi_interval(point: ExponentPoint, region: RegionSpec, dims: ProblemDims) -> XiInterval:
    """
    Intersect the affine conditions on xi.

    With D = p(N-1) - (p-1)gamma and C = p^2(alpha+N) - p((p-1)gamma+p)beta the
    conditions are
        max{0, (1-p*beta)/p} <= xi <= 1 - beta,
        xi < (q - p*beta)/p,
        p(gamma-p) xi > qD - C,
    the last one covering D > 0, D = 0 and D < 0 alike.
    """
    alpha, beta = normalize_beta(point.alpha, region.beta, region.gamma)
    q, gamma, p, N = point.q, region.gamma, dims.p, dims.N

    D = 0.0 if region.case is RegionCase.AT_STAR else p * (N - 1) - (p - 1.0) * gamma
    C = p * p * (alpha + N) - p * ((p - 1.0) * gamma + p) * beta

    lowers = [(0.0, True), ((1.0 - p * beta) / p, True)]
    uppers = [(1.0 - beta, True), ((q - p * beta) / p, False)]

    slope = p * (gamma - p)
    rhs = q * D - C
    if slope > 0.0:
        lowers.append((rhs / slope, False))
    elif not rhs < 0.0:
        # gamma == p: the condition no longer involves xi and fails outright
        return XiInterval(1.0, 0.0, False, False)

    lo, lo_closed = _tightest(lowers, lower=True)
    hi, hi_closed = _tightest(uppers, lower=False)
    return XiInterval(lo, hi, lo_closed, hi_closed)


def find_xi_witness(
    point: ExponentPoint,
    beta0: float,
    gamma0: float,
    dims: ProblemDims,
    pick: str = "midpoint",
) -> Optional[XiWitness]:
    """
    Solve the xi-system for the case selected by gamma0.

    Args:
        point: (alpha0, q)
        beta0: Weight exponent near zero, at most 1 (negative values are normalized)
        gamma0: Lower-bound exponent of V near zero, at least p
        dims: Problem dimensions
        pick: "midpoint" returns the interval midpoint, "lower" the lower end when closed

    Returns:
        XiWitness, or None when the feasible set is empty
    """
    if pick not in ("midpoint", "lower"):
        raise DomainError(f"unknown witness policy {pick!r}")
    region = RegionSpec.build(beta0, gamma0, dims)
    alpha, beta = normalize_beta(point.alpha, region.beta, region.gamma)

    subcase = None
    if region.case is RegionCase.ABOVE_STAR:
        subcase = above_star_subcase(alpha, beta, region.gamma, dims)

    interval = xi_interval(point, region, dims)
    if interval.empty:
        logger.debug(f"no xi-witness for {point} in case {region.case.value}")
        return None

    if interval.lower == interval.upper:
        xi = interval.lower
    elif pick == "lower" and interval.lower_closed:
        xi = interval.lower
    else:
        xi = 0.5 * (interval.lower + interval.upper)

    return XiWitness(
        xi=xi,
        case=region.case,
        feasible=interval,
        subcase=subcase,
        normalized=region.beta < 0.0,
    )


def validate_xi(
    point: ExponentPoint,
    beta0: float,
    gamma0: float,
    xi: float,
    dims: ProblemDims,
) -> bool:
    """
    Check a shift against the raw conditions on the shifted pair.

    The shifted pair (a, b) = (alpha0 + xi*gamma0, beta0 + xi) must satisfy
    1/p <= b <= 1, q > p*b and the gamma-dependent bound on q.
    """
    region = RegionSpec.build(beta0, gamma0, dims)
    alpha, beta = normalize_beta(point.alpha, region.beta, region.gamma)
    q, gamma, p, N = point.q, region.gamma, dims.p, dims.N
    a = alpha + xi * gamma
    b = beta + xi

    if xi < -CLOSED_TOLERANCE:
        return False
    if b < 1.0 / p - CLOSED_TOLERANCE or b > 1.0 + CLOSED_TOLERANCE:
        return False
    if not q > p * b:
        return False

    numerator = p * p * (a + N) - p * ((p - 1.0) * gamma + p) * b
    if region.case is RegionCase.AT_STAR:
        return numerator > 0.0
    D = p * (N - 1) - (p - 1.0) * gamma
    if D > 0.0:
        return q < numerator / D
    return q > numerator / D
