"""Power-type bounds describing V and K near zero and near infinity"""

import math
from dataclasses import asdict, dataclass
from typing import Optional

from src.utils.errors import DomainError, HypothesisViolationError


def _check_common(side: str, radius: float, beta: float, Lambda: float) -> None:
    if not radius > 0.0:
        raise DomainError(f"{side} radius must be positive, got {radius!r}")
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"{side} beta must lie in [0, 1], got {beta!r}")
    if not (Lambda > 0.0 and math.isfinite(Lambda)):
        raise HypothesisViolationError(f"{side} descriptor", f"0 < Lambda < +inf, got {Lambda!r}")


@dataclass(frozen=True)
class ZeroDescriptor:
    """
    Bounds on (0, R1]:
        K(r) <= Lambda0 r^alpha0 V(r)^beta0, and optionally r^gamma0 V(r) >= lambda0.
    """

    R1: float
    alpha0: float
    beta0: float
    Lambda0: float
    gamma0: Optional[float] = None
    lambda0: Optional[float] = None

    def __post_init__(self) -> None:
        _check_common("zero", self.R1, self.beta0, self.Lambda0)
        if (self.gamma0 is None) != (self.lambda0 is None):
            raise DomainError("gamma0 and lambda0 must be given together")

    def check_lower_bound(self, p: float) -> None:
        """gamma0 >= p and lambda0 > 0 whenever the lower bound is present"""
        if self.gamma0 is None:
            return
        if self.gamma0 < p:
            raise HypothesisViolationError(
                "lower bound near zero", f"gamma0 >= p, got gamma0={self.gamma0!r}"
            )
        if not self.lambda0 > 0.0:
            raise HypothesisViolationError("lower bound near zero", f"lambda0 > 0, got {self.lambda0!r}")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class InfinityDescriptor:
    """
    Bounds on [R2, +inf):
        K(r) <= LambdaInf r^alphaInf V(r)^betaInf, and optionally r^gammaInf V(r) >= lambdaInf.
    """

    R2: float
    alphaInf: float
    betaInf: float
    LambdaInf: float
    gammaInf: Optional[float] = None
    lambdaInf: Optional[float] = None

    def __post_init__(self) -> None:
        _check_common("infinity", self.R2, self.betaInf, self.LambdaInf)
        if (self.gammaInf is None) != (self.lambdaInf is None):
            raise DomainError("gammaInf and lambdaInf must be given together")

    def check_lower_bound(self, p: float) -> None:
        """gammaInf <= p and lambdaInf > 0 whenever the lower bound is present"""
        if self.gammaInf is None:
            return
        if self.gammaInf > p:
            raise HypothesisViolationError(
                "lower bound at infinity", f"gammaInf <= p, got gammaInf={self.gammaInf!r}"
            )
        if not self.lambdaInf > 0.0:
            raise HypothesisViolationError(
                "lower bound at infinity", f"lambdaInf > 0, got {self.lambdaInf!r}"
            )

    def as_dict(self) -> dict:
        return asdict(self)
