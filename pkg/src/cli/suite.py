"""Verification suite: independent experiments gathered into one report"""

import asyncio
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

import numpy as np
from loguru import logger

from src.exponents import (
    EmbeddingVerdict,
    ExponentPoint,
    InfinityDescriptor,
    ProblemDims,
    RegionSpec,
    ZeroDescriptor,
    find_xi_witness,
    q_star,
    region_membership,
    validate_xi,
)
from src.numerics import (
    DecayExperimentConfig,
    FamilySweep,
    LogGrid,
    annulus_bound_probe,
    bump,
    decay_slope_experiment,
    estimate_constants,
    random_bumps,
    threshold_sharpness_probe,
)
from src.potentials import PowerLawPotential, RadialPotential
from src.sum_space import (
    SplitSet,
    Splitting,
    SumSpaceParams,
    check_vanishing_criterion,
    prop_LL_inequality_check,
    sum_norm_upper,
)
from src.utils.errors import (
    AssumptionViolationError,
    DomainError,
    EmbeddingError,
    HypothesisViolationError,
    NumericalError,
    ThresholdExponentError,
)

from .schema import VerifySpec

PASSED, FAILED, REFUSED, REPORTED = "passed", "failed", "refused", "reported"
ERRORED = "error"
STATUSES = (PASSED, FAILED, REFUSED, REPORTED, ERRORED)
SAMPLE_ANNULUS = (1.0, 2.0)
STABILITY_TOLERANCE = 0.2
# Canonical bump sequences need several nodes per bump out to r = 32
SEQUENCE_NODES_PER_DECADE = 512
SHARPNESS = "sharpness at threshold"


@dataclass
class ExperimentEntry:
    name: str
    status: str
    details: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "status": self.status, "details": self.details}


@dataclass
class VerifyReport:
    """Ordered experiment entries; the run fails iff some entry failed or errored"""

    seed: int
    nodes_per_decade: int
    entries: List[ExperimentEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.status not in (FAILED, ERRORED) for e in self.entries)

    def as_dict(self) -> Dict[str, Any]:
        counts = {s: sum(e.status == s for e in self.entries) for s in STATUSES}
        return {
            "seed": self.seed,
            "nodes_per_decade": self.nodes_per_decade,
            "passed": self.passed,
            "counts": counts,
            "experiments": [e.as_dict() for e in self.entries],
        }


@dataclass
class SuiteContext:
    V: RadialPotential
    K: RadialPotential
    dims: ProblemDims
    zero: ZeroDescriptor
    infinity: InfinityDescriptor
    verdict: EmbeddingVerdict
    spec: VerifySpec
    seed: int
    grid: LogGrid


def _refused(name: str, reason: str, error: Exception) -> ExperimentEntry:
    logger.warning(f"{name}: {error}")
    return ExperimentEntry(name, REFUSED, {"reason": reason, "message": str(error)})


def _errored(name: str, reason: str, error: Exception) -> ExperimentEntry:
    return ExperimentEntry(name, ERRORED, {"reason": reason, "message": str(error)})


def run_guarded(name: str, fn: Callable[[], ExperimentEntry]) -> ExperimentEntry:
    """
    Turn exceptions into report entries so that the run continues.

    Inputs an experiment cannot take are refused. Numerical failures and
    unexpected exceptions become error entries, which fail the run.
    """
    try:
        return fn()
    except ThresholdExponentError as e:
        return _refused(name, "refused: threshold exponent", e)
    except (HypothesisViolationError, AssumptionViolationError) as e:
        return _refused(name, "refused: hypothesis not met", e)
    except DomainError as e:
        return _refused(name, "refused: inadmissible input", e)
    except NumericalError as e:
        logger.error(f"{name}: {e}")
        return _errored(name, "error: numerical failure", e)
    except EmbeddingError as e:
        logger.error(f"{name}: {e}")
        return _errored(name, f"error: {type(e).__name__}", e)
    except Exception as e:
        logger.exception(f"{name}: unexpected {type(e).__name__}")
        return _errored(name, f"error: unexpected {type(e).__name__}", e)


def _decay_sides(q: float, verdict: EmbeddingVerdict) -> List[str]:
    sides = []
    if verdict.q1 is not None and verdict.q1.contains(q):
        sides.append("zero")
    if verdict.q2 is not None and verdict.q2.contains(q):
        sides.append("infinity")
    return sides or ["zero", "infinity"]


def _decay_config(ctx: SuiteContext, q: float, side: str) -> DecayExperimentConfig:
    spec = ctx.spec
    if side == "zero":
        alpha, beta, gamma = ctx.zero.alpha0, ctx.zero.beta0, ctx.zero.gamma0
        radii = tuple(spec.zero_radii)
    else:
        alpha, beta, gamma = ctx.infinity.alphaInf, ctx.infinity.betaInf, ctx.infinity.gammaInf
        radii = tuple(spec.infinity_radii)
    return DecayExperimentConfig(
        V=ctx.V,
        K=ctx.K,
        dims=ctx.dims,
        q=q,
        side=side,
        radii=radii,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        sweep=FamilySweep.around(ctx.dims),
        grid=ctx.grid,
        tolerance=spec.tolerance,
        bilinear=spec.bilinear,
        refine=spec.refine,
    )


def decay_entry(ctx: SuiteContext, q: float, side: str) -> ExperimentEntry:
    result = decay_slope_experiment(_decay_config(ctx, q, side))
    status = PASSED if result.passed else FAILED
    return ExperimentEntry(f"decay q={q:g} {side}", status, result.as_dict())


def sharpness_threshold(
    zero: ZeroDescriptor, verdict: EmbeddingVerdict, dims: ProblemDims
) -> Tuple[float, str]:
    """
    Exponent at which near-zero decay should stop, with its label.

    Under a lower bound on V the near-zero range is a region slice whose upper
    end replaces q*(alpha0, beta0).

    Raises:
        DomainError: if the region slice is empty or unbounded
    """
    if any(c.criterion == "THM3" for c in verdict.citations):
        q1 = verdict.q1
        if q1 is None or q1.empty or not q1.bounded:
            raise DomainError("the near-zero region slice has no finite upper end")
        return float(q1.upper), "region upper end"
    return q_star(zero.alpha0, zero.beta0, dims), "q*"


def sharpness_entry(ctx: SuiteContext) -> ExperimentEntry:
    threshold, label = sharpness_threshold(ctx.zero, ctx.verdict, ctx.dims)
    config = _decay_config(ctx, ctx.spec.q_values[0], "zero")
    result = threshold_sharpness_probe(config, threshold=threshold)
    return ExperimentEntry(SHARPNESS, REPORTED, {"threshold": label, **result.as_dict()})


def pointwise_entry(ctx: SuiteContext) -> ExperimentEntry:
    """Constants at two resolutions; they must agree within 20%"""
    coarse, fine = (
        estimate_constants(ctx.V, ctx.dims, grid, zero=ctx.zero, infinity=ctx.infinity)
        for grid in (ctx.grid, ctx.grid.refined())
    )
    variation = {}
    for name in ("C_Np", "S_Np", "c_zero", "c_inf"):
        a, b = getattr(coarse, name), getattr(fine, name)
        if a is not None and b is not None:
            variation[name] = abs(b - a) / max(a, b)
    stable = all(v < STABILITY_TOLERANCE for v in variation.values())
    return ExperimentEntry(
        "pointwise constants",
        PASSED if stable else FAILED,
        {"coarse": coarse.as_dict(), "refined": fine.as_dict(), "relative_variation": variation},
    )


def annulus_entry(ctx: SuiteContext, rng: np.random.Generator) -> ExperimentEntry:
    q = ctx.spec.q_values[0]
    # narrow bumps may miss every node of a coarse grid
    bumps = random_bumps(ctx.grid, rng, ctx.spec.n_random, SAMPLE_ANNULUS)
    ratios = [
        annulus_bound_probe(u, ctx.K, q, SAMPLE_ANNULUS, ctx.spec.s, ctx.V, ctx.dims).ratio
        for u in bumps
        if not u.is_zero
    ]
    bounded = bool(np.all(np.isfinite(ratios)))
    return ExperimentEntry(
        "annulus bound",
        PASSED if bounded else FAILED,
        {
            "q": q,
            "s": ctx.spec.s,
            "annulus": list(SAMPLE_ANNULUS),
            "samples": len(ratios),
            "max_ratio": float(np.max(ratios)) if ratios else None,
        },
    )


def canonical_sequences(grid: LogGrid, dims: ProblemDims, q1: float, q2: float) -> Dict[str, Any]:
    """
    Scaled, outward-translated and constant bump sequences with their expected classification.

    The weight is K = r^-(N+3), so a unit bump at radius c carries mass of
    order c^-4 whatever the dimension.
    """
    params = SumSpaceParams(q1, q2, PowerLawPotential(1.0, -(dims.N + 3.0)), dims)
    base = bump(grid, 1.0, 1.0)
    scaled = [base.scaled(2.0**-k) for k in range(11)]
    moving = [bump(grid, float(c), 1.0) for c in range(1, 33)]
    outside = [SplitSet.annulus(0.5 * c) for c in range(1, 33)]
    constant = [base] * 8
    return {
        "params": params,
        "cases": [
            ("scaled", scaled, [SplitSet.whole()] * len(scaled), True),
            ("translated", moving, outside, True),
            ("constant", constant, None, False),
        ],
    }


def sum_space_entry(ctx: SuiteContext, rng: np.random.Generator) -> ExperimentEntry:
    request = ctx.spec.sum_space
    params = SumSpaceParams(request.q1, request.q2, ctx.K, ctx.dims)
    bumps = random_bumps(ctx.grid, rng, ctx.spec.n_random, SAMPLE_ANNULUS, max_amplitude=0.5)

    exact = 0
    bounded = 0
    for u in bumps:
        best = sum_norm_upper(u, params)
        exact += Splitting.of(u, best.threshold).reconstructs(u)
        bounded += prop_LL_inequality_check(u, SplitSet.annulus(*SAMPLE_ANNULUS), params).passed

    npd = max(ctx.grid.nodes_per_decade, SEQUENCE_NODES_PER_DECADE)
    sequences = canonical_sequences(LogGrid(-1, 2, npd), ctx.dims, request.q1, request.q2)
    classified = {}
    for name, sequence, sets, expected in sequences["cases"]:
        report = check_vanishing_criterion(sequence, sequences["params"], sets=sets)
        classified[name] = {"holds": report.holds, "expected": expected}

    as_expected = all(c["holds"] == c["expected"] for c in classified.values())
    ok = exact == len(bumps) and bounded == len(bumps) and as_expected
    return ExperimentEntry(
        "sum space",
        PASSED if ok else FAILED,
        {
            "q1": params.q1,
            "q2": params.q2,
            "reconstruction_exact": exact,
            "bounded_set_inequality": bounded,
            "samples": len(bumps),
            "vanishing": classified,
        },
    )


def equivalence_entry(ctx: SuiteContext, rng: np.random.Generator) -> ExperimentEntry:
    """Witness existence against region membership on random points covering every case"""
    dims = ctx.dims
    star = dims.gamma_star_star
    n = ctx.spec.equivalence_samples
    choices = rng.integers(0, 5, n)
    spans = [
        lambda: rng.uniform(dims.p, dims.N),
        lambda: float(dims.N),
        lambda: rng.uniform(dims.N, star),
        lambda: star,
        lambda: rng.uniform(star, star + 4.0),
    ]

    agree = valid = 0
    for choice in choices:
        gamma = float(spans[int(choice)]())
        alpha, beta, q = rng.uniform(-5.0, 5.0), rng.uniform(0.0, 1.0), rng.uniform(1.0, 20.0)
        point = ExponentPoint(float(alpha), float(q))
        witness = find_xi_witness(point, float(beta), gamma, dims)
        member = region_membership(point, RegionSpec.build(float(beta), gamma, dims), dims)
        agree += (witness is not None) == member
        valid += witness is None or validate_xi(point, float(beta), gamma, witness.xi, dims)

    return ExperimentEntry(
        "witness equivalence",
        PASSED if agree == n and valid == n else FAILED,
        {"samples": n, "agreement": agree, "validated": valid},
    )


async def _gather(ctx: SuiteContext) -> List[ExperimentEntry]:
    seeds = np.random.SeedSequence(ctx.seed).spawn(3)
    rngs = [np.random.default_rng(s) for s in seeds]

    jobs: List[Any] = []
    for q in ctx.spec.q_values:
        for side in _decay_sides(q, ctx.verdict):
            jobs.append((f"decay q={q:g} {side}", lambda q=q, side=side: decay_entry(ctx, q, side)))
    jobs.append((SHARPNESS, lambda: sharpness_entry(ctx)))
    jobs.append(("pointwise constants", lambda: pointwise_entry(ctx)))
    jobs.append(("annulus bound", lambda: annulus_entry(ctx, rngs[0])))
    jobs.append(("sum space", lambda: sum_space_entry(ctx, rngs[1])))
    jobs.append(("witness equivalence", lambda: equivalence_entry(ctx, rngs[2])))

    tasks = [asyncio.to_thread(run_guarded, name, fn) for name, fn in jobs]
    return list(await asyncio.gather(*tasks))


def run_suite(
    V: RadialPotential,
    K: RadialPotential,
    dims: ProblemDims,
    zero: ZeroDescriptor,
    infinity: InfinityDescriptor,
    verdict: EmbeddingVerdict,
    spec: VerifySpec,
    seed: int,
    nodes_per_decade: int,
) -> VerifyReport:
    """
    Run every experiment concurrently and collect the entries in a fixed order.

    Each random experiment draws from its own generator spawned from seed,
    so results do not depend on scheduling.
    """
    grid = LogGrid(nodes_per_decade=nodes_per_decade)
    ctx = SuiteContext(V, K, dims, zero, infinity, verdict, spec, seed, grid)
    entries = asyncio.run(_gather(ctx))
    report = VerifyReport(seed=seed, nodes_per_decade=nodes_per_decade, entries=entries)
    for entry in entries:
        logger.info(f"{entry.status.upper():8} {entry.name}")
    return report

