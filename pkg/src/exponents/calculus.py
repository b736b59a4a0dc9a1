"""
Threshold functions of the exponent calculus.

All functions are pure and work on plain floats. Exponent names follow the
usual conventions: ``p`` is the Sobolev exponent, ``N`` the dimension, and
(alpha, beta, gamma) the power-type descriptors of the potentials.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

from src.utils.errors import DomainError, UndefinedAtGammaError
from src.utils.helpers import nearly_equal, sphere_area


@dataclass(frozen=True)
class ProblemDims:
    """Dimension N and exponent p, with 1 < p < N"""

    N: int
    p: float

    def __post_init__(self) -> None:
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 2:
            raise DomainError(f"dimension N must be an integer >= 2, got {self.N!r}")
        if not (1.0 < self.p < self.N):
            raise DomainError(f"exponent must satisfy 1 < p < N, got p={self.p!r}, N={self.N!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "p", float(self.p))

    @property
    def p_star(self) -> float:
        """Critical Sobolev exponent pN/(N-p)"""
        return self.p * self.N / (self.N - self.p)

    @property
    def p_prime(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def gamma_star_star(self) -> float:
        """p(N-1)/(p-1), where q_** becomes undefined"""
        return self.p * (self.N - 1) / (self.p - 1.0)

    @property
    def sphere_area(self) -> float:
        return sphere_area(self.N)

    @property
    def strauss_exponent(self) -> float:
        """Radial decay exponent (N-p)/p of the pointwise estimate"""
        return (self.N - self.p) / self.p

    def decay_exponent(self, gamma: float) -> float:
        """Pointwise decay exponent (p(N-1) - gamma(p-1))/p^2 under a lower bound r^gamma V >= lambda"""
        return (self.p * (self.N - 1) - gamma * (self.p - 1.0)) / self.p**2


@dataclass(frozen=True)
class ExponentPoint:
    """A point (alpha, q) of the alpha-q plane"""

    alpha: float
    q: float


@dataclass(frozen=True)
class AdmissibleRange:
    """Open interval (lower, upper) of Lebesgue exponents; upper may be +inf"""

    lower: float
    upper: float = math.inf

    @property
    def empty(self) -> bool:
        return not self.lower < self.upper

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.upper)

    def contains(self, q: float) -> bool:
        return self.lower < q < self.upper

    def intersect(self, other: "AdmissibleRange") -> "AdmissibleRange":
        return AdmissibleRange(max(self.lower, other.lower), min(self.upper, other.upper))

    def representative(self) -> float:
        """An interior exponent: the midpoint, or lower + 1 when unbounded"""
        if self.empty:
            raise DomainError("an empty range has no representative exponent")
        if self.bounded:
            return 0.5 * (self.lower + self.upper)
        return self.lower + 1.0

    def as_dict(self) -> Dict[str, object]:
        return {"lower": self.lower, "upper": self.upper, "empty": self.empty}


class RegionCase(str, Enum):
    """Position of gamma relative to N and p(N-1)/(p-1)"""

    BELOW_N = "BelowN"
    AT_N = "AtN"
    BETWEEN_N_AND_STAR = "BetweenNAndStar"
    AT_STAR = "AtStar"
    ABOVE_STAR = "AboveStar"


def classify_gamma(gamma: float, dims: ProblemDims) -> RegionCase:
    """
    Select the case tag of gamma >= p.

    Values within a relative 1e-12 of N or p(N-1)/(p-1) select the equality case.
    """
    if gamma < dims.p and not nearly_equal(gamma, dims.p):
        raise DomainError(f"gamma must satisfy gamma >= p={dims.p}, got {gamma!r}")
    star = dims.gamma_star_star
    if nearly_equal(gamma, dims.N):
        return RegionCase.AT_N
    if nearly_equal(gamma, star):
        return RegionCase.AT_STAR
    if gamma < dims.N:
        return RegionCase.BELOW_N
    if gamma < star:
        return RegionCase.BETWEEN_N_AND_STAR
    return RegionCase.ABOVE_STAR


def _check_beta(beta: float) -> None:
    if not (0.0 <= beta <= 1.0):
        raise DomainError(f"beta must lie in [0, 1], got {beta!r}")


def normalize_beta(alpha: float, beta: float, gamma: float) -> Tuple[float, float]:
    """Map a negative beta to beta = 0 through (alpha, beta) -> (alpha - beta*gamma, 0)"""
    if beta > 1.0:
        raise DomainError(f"beta must not exceed 1, got {beta!r}")
    if beta < 0.0:
        return alpha - beta * gamma, 0.0
    return alpha, beta


def alpha_star(beta: float, dims: ProblemDims) -> float:
    """max{p*beta - 1 - (p-1)N/p, -(1-beta)N}; nonpositive, zero only at beta = 1"""
    _check_beta(beta)
    p, N = dims.p, dims.N
    return max(p * beta - 1.0 - (p - 1.0) * N / p, -(1.0 - beta) * N)


def q_star(alpha: float, beta: float, dims: ProblemDims) -> float:
    """q*(alpha, beta) = p(alpha - p*beta + N)/(N - p)"""
    p, N = dims.p, dims.N
    return p * (alpha - p * beta + N) / (N - p)


def q_star_lower(alpha: float, beta: float, gamma: float, dims: ProblemDims) -> float:
    """q_*(alpha, beta, gamma) = p(alpha - gamma*beta + N)/(N - gamma); undefined at gamma = N"""
    p, N = dims.p, dims.N
    if nearly_equal(gamma, N):
        raise UndefinedAtGammaError("q_*", gamma)
    return p * (alpha - gamma * beta + N) / (N - gamma)


def q_double_star(alpha: float, beta: float, gamma: float, dims: ProblemDims) -> float:
    """q_**(alpha, beta, gamma); undefined at gamma = p(N-1)/(p-1)"""
    p, N = dims.p, dims.N
    if nearly_equal(gamma, dims.gamma_star_star):
        raise UndefinedAtGammaError("q_**", gamma)
    return p * (p * alpha + (1.0 - p * beta) * gamma + p * (N - 1)) / (p * (N - 1) - gamma * (p - 1.0))


def alpha_123(beta: float, gamma: float, dims: ProblemDims) -> Tuple[float, float, float]:
    """Corner abscissae (alpha_1, alpha_2, alpha_3) of the piecewise descriptions"""
    if beta > 1.0:
        raise DomainError(f"beta must not exceed 1, got {beta!r}")
    p, N = dims.p, dims.N
    alpha_1 = -(1.0 - beta) * gamma
    alpha_2 = -(1.0 - beta) * N
    alpha_3 = -((p - 1.0) * N + (1.0 - p * beta) * gamma) / p
    return alpha_1, alpha_2, alpha_3


def thm1_threshold(alpha: float, beta: float, dims: ProblemDims) -> float:
    """Lower end max{1, p*beta, q*(alpha, beta)} of the admissible exponents at infinity"""
    _check_beta(beta)
    return max(1.0, dims.p * beta, q_star(alpha, beta, dims))


def thm1_branches(alpha: float, beta: float, dims: ProblemDims) -> Tuple[str, float]:
    """
    Two-branch form of max{1, p*beta, q*}.

    Returns:
        Tuple of (branch name, value); "q_star" when alpha >= alpha*(beta),
        "max(1,p*beta)" otherwise
    """
    if alpha >= alpha_star(beta, dims):
        return "q_star", q_star(alpha, beta, dims)
    return "max(1,p*beta)", max(1.0, dims.p * beta)


def thm2_branch(alpha: float, beta: float, gamma: float, dims: ProblemDims) -> str:
    """Name of the piecewise branch of max{1, p*beta, q_*, q_**} for gamma <= p"""
    alpha, beta = normalize_beta(alpha, beta, gamma)
    alpha_1, alpha_2, alpha_3 = alpha_123(beta, gamma, dims)
    if alpha >= alpha_1:
        return "q_double_star"
    if alpha >= max(alpha_2, alpha_3):
        return "q_star_lower"
    return "max(1,p*beta)"


def thm2_threshold(alpha: float, beta: float, gamma: float, dims: ProblemDims) -> float:
    """
    Lower end of the admissible exponents at infinity under a lower bound on V.

    Evaluated through the three-branch form keyed on alpha against alpha_1
    and max{alpha_2, alpha_3}.

    Args:
        alpha: Growth exponent of K / V^beta at infinity
        beta: Weight exponent, beta <= 1 (negative values are normalized)
        gamma: Lower-bound exponent of V, gamma <= p
        dims: Problem dimensions

    Returns:
        max{1, p*beta, q_*, q_**}
    """
    if gamma > dims.p and not nearly_equal(gamma, dims.p):
        raise DomainError(f"gamma must satisfy gamma <= p={dims.p}, got {gamma!r}")
    alpha, beta = normalize_beta(alpha, beta, gamma)
    branch = thm2_branch(alpha, beta, gamma, dims)
    if branch == "q_double_star":
        return q_double_star(alpha, beta, gamma, dims)
    if branch == "q_star_lower":
        return q_star_lower(alpha, beta, gamma, dims)
    return max(1.0, dims.p * beta)


def thm2_threshold_direct(alpha: float, beta: float, gamma: float, dims: ProblemDims) -> float:
    """The same threshold as a plain four-way maximum"""
    alpha, beta = normalize_beta(alpha, beta, gamma)
    return max(
        1.0,
        dims.p * beta,
        q_star_lower(alpha, beta, gamma, dims),
        q_double_star(alpha, beta, gamma, dims),
    )

