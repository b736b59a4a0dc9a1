"""Combine the criteria at zero and at infinity into an embedding verdict"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from loguru import logger

from src.utils.errors import HypothesisViolationError

from .calculus import (
    AdmissibleRange,
    ExponentPoint,
    ProblemDims,
    alpha_star,
    q_star,
    thm1_branches,
    thm1_threshold,
    thm2_branch,
    thm2_threshold,
)
from .descriptors import InfinityDescriptor, ZeroDescriptor
from .region import RegionSpec, region_slice
from .witness import XiWitness, find_xi_witness

CRITERIA = {
    "THM0": "vanishing near zero from K <= Lambda0 r^alpha0 V^beta0 with alpha0 > alpha*(beta0): "
    "max{1, p beta0} < q1 < q*(alpha0, beta0)",
    "THM1": "vanishing at infinity from K <= LambdaInf r^alphaInf V^betaInf: "
    "q2 > max{1, p betaInf, q*(alphaInf, betaInf)}",
    "THM2": "vanishing at infinity improved by r^gammaInf V >= lambdaInf with gammaInf <= p: "
    "q2 > max{1, p betaInf, q_*, q_**}",
    "THM3": "vanishing near zero improved by r^gamma0 V >= lambda0 with gamma0 >= p: "
    "(alpha0, q1) in the open region A_{beta0,gamma0}",
}


@dataclass(frozen=True)
class Citation:
    """A criterion that fired, with the branch or case that produced the bound"""

    criterion: str
    detail: str

    def as_dict(self) -> Dict[str, str]:
        return {"criterion": self.criterion, "detail": self.detail, "statement": CRITERIA[self.criterion]}


@dataclass
class EmbeddingVerdict:
    """Admissible exponent ranges for the compact embedding of the radial space"""

    zero: ZeroDescriptor
    infinity: InfinityDescriptor
    q1: Optional[AdmissibleRange]
    q2: Optional[AdmissibleRange]
    single_space: Optional[AdmissibleRange]
    citations: List[Citation] = field(default_factory=list)
    witness: Optional[XiWitness] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        sides = sum(r is not None and not r.empty for r in (self.q1, self.q2))
        return {2: "conclusive", 1: "partial", 0: "inconclusive"}[sides]

    def summary(self) -> str:
        def fmt(r: Optional[AdmissibleRange]) -> str:
            if r is None:
                return "no conclusion"
            if r.empty:
                return "empty"
            return f"({r.lower:g}, {r.upper:g})"

        return (
            f"status={self.status} q1={fmt(self.q1)} q2={fmt(self.q2)} "
            f"single={fmt(self.single_space)} via {', '.join(c.criterion for c in self.citations) or 'none'}"
        )


def thm0_range(zero: ZeroDescriptor, dims: ProblemDims) -> AdmissibleRange:
    """
    Exponents q1 for which the ball piece vanishes under the basic bound near zero.

    Raises:
        HypothesisViolationError: if alpha0 <= alpha*(beta0)
    """
    threshold = alpha_star(zero.beta0, dims)
    if not zero.alpha0 > threshold:
        raise HypothesisViolationError(
            "THM0", f"alpha0 > alpha*(beta0) = {threshold!r}, got alpha0={zero.alpha0!r}"
        )
    return AdmissibleRange(max(1.0, dims.p * zero.beta0), q_star(zero.alpha0, zero.beta0, dims))


def thm3_range(zero: ZeroDescriptor, dims: ProblemDims) -> AdmissibleRange:
    """Slice of A_{beta0,gamma0} at alpha0"""
    zero.check_lower_bound(dims.p)
    region = RegionSpec.build(zero.beta0, zero.gamma0, dims)
    return region_slice(zero.alpha0, region, dims)


def _zero_side(
    zero: ZeroDescriptor, dims: ProblemDims, verdict: EmbeddingVerdict, strict: bool
) -> None:
    if zero.gamma0 is not None:
        if dims.N >= 3:
            region = RegionSpec.build(zero.beta0, zero.gamma0, dims)
            verdict.q1 = thm3_range(zero, dims)
            verdict.citations.append(Citation("THM3", f"case {region.case.value}"))
            if not verdict.q1.empty:
                q = verdict.q1.representative()
                verdict.witness = find_xi_witness(
                    ExponentPoint(zero.alpha0, q), zero.beta0, region.gamma, dims
                )
            else:
                verdict.warnings.append(f"region slice at alpha0={zero.alpha0!r} is empty")
            return
        message = f"lower bound near zero ignored: the improved criterion needs N >= 3, got N={dims.N}"
        logger.warning(message)
        verdict.warnings.append(message)

    try:
        verdict.q1 = thm0_range(zero, dims)
        verdict.citations.append(Citation("THM0", "alpha0 > alpha*(beta0)"))
    except HypothesisViolationError as e:
        if strict:
            raise
        logger.warning(f"no criterion applies near zero: {e}")
        verdict.warnings.append(f"no criterion applies near zero: {e}")


def _infinity_side(inf: InfinityDescriptor, dims: ProblemDims, verdict: EmbeddingVerdict) -> None:
    if inf.gammaInf is not None:
        inf.check_lower_bound(dims.p)
        threshold = thm2_threshold(inf.alphaInf, inf.betaInf, inf.gammaInf, dims)
        branch = thm2_branch(inf.alphaInf, inf.betaInf, inf.gammaInf, dims)
        verdict.q2 = AdmissibleRange(threshold)
        verdict.citations.append(Citation("THM2", f"branch {branch}"))
        return
    branch, _ = thm1_branches(inf.alphaInf, inf.betaInf, dims)
    verdict.q2 = AdmissibleRange(thm1_threshold(inf.alphaInf, inf.betaInf, dims))
    verdict.citations.append(Citation("THM1", f"branch {branch}"))


def compute_verdict(
    zero: ZeroDescriptor,
    inf: InfinityDescriptor,
    dims: ProblemDims,
    strict: bool = False,
) -> EmbeddingVerdict:
    """
    Admissible q1, q2 and single-space ranges for the pair of descriptors.

    The improved criteria are preferred whenever a lower bound on V is
    available. A side with no applicable criterion is reported as None, never
    as an empty range.

    Args:
        zero: Descriptor near zero
        inf: Descriptor at infinity
        dims: Problem dimensions
        strict: Re-raise a failed hypothesis near zero instead of reporting no conclusion

    Returns:
        EmbeddingVerdict
    """
    verdict = EmbeddingVerdict(zero=zero, infinity=inf, q1=None, q2=None, single_space=None)
    _zero_side(zero, dims, verdict, strict)
    _infinity_side(inf, dims, verdict)

    if verdict.q1 is not None and verdict.q2 is not None:
        verdict.single_space = verdict.q1.intersect(verdict.q2)

    logger.info(f"verdict: {verdict.summary()}")
    return verdict
