"""Numerical checks of the standing assumptions on V and K"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy import integrate

from src.exponents import ProblemDims
from src.utils.errors import DomainError
from src.utils.helpers import nearly_equal

from .model import RadialPotential

DEFAULT_V_INTERVAL = (1.0, 2.0)
DEFAULT_K_INTERVALS = ((0.1, 1.0), (1.0, 10.0))


@dataclass(frozen=True)
class KLocalIntegrability:
    """Local integrability exponent s of K and the derived exponent q~ = p(1 + 1/N - 1/s)"""

    s: float
    q_tilde: float
    threshold: float

    @classmethod
    def from_exponent(cls, s: float, dims: ProblemDims) -> "KLocalIntegrability":
        if not s > 1.0:
            raise DomainError(f"integrability exponent must satisfy s > 1, got {s!r}")
        q_tilde = dims.p * (1.0 + 1.0 / dims.N - 1.0 / s)
        threshold = dims.N * dims.p / (dims.N * (dims.p - 1.0) + dims.p)
        return cls(s=float(s), q_tilde=q_tilde, threshold=threshold)

    @property
    def on_boundary(self) -> bool:
        return nearly_equal(self.s, self.threshold)

    @property
    def above_threshold(self) -> bool:
        """s > Np/(N(p-1)+p), equivalently q~ > 1"""
        return self.s > self.threshold and not self.on_boundary


@dataclass
class AssumptionCheck:
    name: str
    passed: bool
    detail: str


@dataclass
class AssumptionReport:
    """Outcome of every assumption check; failures are listed, never raised"""

    k_integrability: KLocalIntegrability
    checks: List[AssumptionCheck] = field(default_factory=list)

    @property
    def failures(self) -> List[AssumptionCheck]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in self.checks]
        return "\n".join(lines)


def _integral(fn, lo: float, hi: float) -> Tuple[float, bool]:
    """Quadrature in log r; returns (value, finite)"""
    with np.errstate(all="ignore"):
        value, _ = integrate.quad(
            lambda t: float(fn(np.exp(t))) * np.exp(t), np.log(lo), np.log(hi), limit=200
        )
    return value, bool(np.isfinite(value))


def validate_assumptions(
    V: RadialPotential,
    K: RadialPotential,
    dims: ProblemDims,
    s: float,
    v_interval: Tuple[float, float] = DEFAULT_V_INTERVAL,
    k_intervals: Sequence[Tuple[float, float]] = DEFAULT_K_INTERVALS,
) -> AssumptionReport:
    """
    Check V >= 0, V integrable on an interval, K > 0, K^s integrable on compacts,
    and the threshold s > Np/(N(p-1)+p).

    Args:
        V: Potential
        K: Weight
        dims: Problem dimensions
        s: Local integrability exponent claimed for K
        v_interval: Interval (r1, r2) for the integrability of V
        k_intervals: Compact intervals on which K^s is integrated

    Returns:
        AssumptionReport
    """
    report = AssumptionReport(k_integrability=KLocalIntegrability.from_exponent(s, dims))
    radii = np.logspace(-4.0, 4.0, 801)

    v_values = V(radii)
    report.checks.append(
        AssumptionCheck(
            "V nonnegative", bool(np.all(v_values >= 0.0)), f"min sampled V = {v_values.min():.6g}"
        )
    )
    k_values = K(radii)
    report.checks.append(
        AssumptionCheck("K positive", bool(np.all(k_values > 0.0)), f"min sampled K = {k_values.min():.6g}")
    )

    value, finite = _integral(V, *v_interval)
    report.checks.append(
        AssumptionCheck("V locally integrable", finite, f"integral over {v_interval} = {value:.6g}")
    )
    for lo, hi in k_intervals:
        value, finite = _integral(lambda r: K(r) ** s, lo, hi)
        report.checks.append(
            AssumptionCheck(f"K^s integrable on {(lo, hi)}", finite, f"integral = {value:.6g}")
        )

    kli = report.k_integrability
    detail = f"s={kli.s:g}, threshold={kli.threshold:.6g}, q~={kli.q_tilde:.6g}"
    if kli.on_boundary:
        detail += " (boundary: q~ = 1)"
    report.checks.append(AssumptionCheck("q~ > 1", kli.above_threshold, detail))

    for failure in report.failures:
        logger.warning(f"assumption check failed: {failure.name} ({failure.detail})")
    return report
