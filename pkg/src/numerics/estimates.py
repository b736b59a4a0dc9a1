"""
Empirical lower bounds for the supremum functions and pointwise constants.

Every estimate is a maximum over explicit test functions, hence a lower
bound of the true supremum.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.optimize import minimize_scalar

from src.exponents import InfinityDescriptor, ProblemDims, ZeroDescriptor
from src.potentials import RadialPotential, constant_potential
from src.utils.errors import DomainError, NumericalError

from .families import FamilySweep, TestFamilyParams
from .grid import LogGrid, RadialGridFunction
from .norms import (
    lebesgue_norm,
    log_trapezoid_weights,
    region_points,
    w_norm,
    weight_lebesgue_norm,
    weighted_q_integral,
)

ZERO_POTENTIAL = constant_potential(0.0)


def side_region(R: float, side: str) -> Tuple[float, float]:
    """(0, R] near zero, [R, inf) at infinity"""
    if not R > 0.0:
        raise DomainError(f"radius must be positive, got {R!r}")
    if side == "zero":
        return 0.0, R
    if side == "infinity":
        return R, np.inf
    raise DomainError(f"side must be 'zero' or 'infinity', got {side!r}")


@dataclass
class SupremumEstimate:
    """Best quotient found and the family member attaining it"""

    value: float
    argmax: Optional[TestFamilyParams]
    n_evaluated: int
    n_skipped: int
    refined: bool = False

    def as_dict(self) -> Dict:
        return {
            "value": self.value,
            "argmax": self.argmax.as_dict() if self.argmax else None,
            "n_evaluated": self.n_evaluated,
            "n_skipped": self.n_skipped,
            "refined": self.refined,
        }


@dataclass
class BilinearEstimate:
    value: float
    u_argmax: Optional[TestFamilyParams]
    h_argmax: Optional[TestFamilyParams]
    s_value: float

    def as_dict(self) -> Dict:
        return {
            "value": self.value,
            "u_argmax": self.u_argmax.as_dict() if self.u_argmax else None,
            "h_argmax": self.h_argmax.as_dict() if self.h_argmax else None,
            "s_value": self.s_value,
        }


def _check_q(q: float) -> None:
    if not q > 1.0:
        raise DomainError(f"exponent must satisfy q > 1, got {q!r}")


def _quotient(
    u: RadialGridFunction,
    q: float,
    region: Tuple[float, float],
    V: RadialPotential,
    K: RadialPotential,
    dims: ProblemDims,
) -> Optional[float]:
    """int_region K|u|^q / ||u||^q, None for a zero-norm member"""
    norm = w_norm(u, V, dims)
    if norm == 0.0:
        return None
    return weighted_q_integral(u, K, q, dims, region) / norm**q


def _refine_nu(
    best: TestFamilyParams,
    best_value: float,
    sweep: FamilySweep,
    q: float,
    region: Tuple[float, float],
    V: RadialPotential,
    K: RadialPotential,
    dims: ProblemDims,
    grid: LogGrid,
) -> Tuple[TestFamilyParams, float]:
    """Golden-section search in nu around the best coarse member"""
    nus = sorted(sweep.nu_values)
    i = nus.index(best.nu)
    if i == 0 or i == len(nus) - 1:
        return best, best_value

    def objective(nu: float) -> float:
        value = _quotient(best.with_nu(nu).member(grid), q, region, V, K, dims)
        return -(value or 0.0)

    try:
        result = minimize_scalar(
            objective,
            bracket=(nus[i - 1], nus[i], nus[i + 1]),
            method="golden",
            options={"xtol": 1e-4},
        )
    except ValueError as e:
        logger.debug(f"nu refinement skipped: {e}")
        return best, best_value

    refined_value = -float(result.fun)
    if refined_value > best_value:
        return best.with_nu(float(result.x)), refined_value
    return best, best_value


def estimate_S(
    q: float,
    R: float,
    side: str,
    V: RadialPotential,
    K: RadialPotential,
    sweep: FamilySweep,
    dims: ProblemDims,
    grid: Optional[LogGrid] = None,
    refine: bool = True,
) -> SupremumEstimate:
    """
    Lower bound of the supremum of int K|u|^q / ||u||^q over the ball (zero side)
    or its complement (infinity side).

    Args:
        q: Exponent, q > 1
        R: Radius of the ball
        side: "zero" or "infinity"
        V: Potential entering the norm
        K: Weight
        sweep: Family of test functions
        dims: Problem dimensions
        grid: Radial grid, default LogGrid()
        refine: Run a golden-section search in nu at the best window

    Returns:
        SupremumEstimate

    Raises:
        NumericalError: if every member has zero norm or leaves the grid
    """
    _check_q(q)
    grid = grid or LogGrid()
    region = side_region(R, side)

    best: Optional[TestFamilyParams] = None
    best_value = -np.inf
    evaluated = skipped = 0
    for params, member in sweep.members(grid, R, side):
        value = _quotient(member, q, region, V, K, dims)
        if value is None:
            skipped += 1
            continue
        evaluated += 1
        if value > best_value:
            best, best_value = params, value

    if best is None:
        raise NumericalError(f"no usable family member for q={q:g}, R={R:g}, side={side}")

    refined = False
    if refine:
        refined_best, refined_value = _refine_nu(best, best_value, sweep, q, region, V, K, dims, grid)
        refined = refined_value > best_value
        best, best_value = refined_best, refined_value

    logger.debug(f"S estimate q={q:g} R={R:g} {side}: {best_value:.6g} at {best}")
    return SupremumEstimate(float(best_value), best, evaluated, skipped, refined)


def _sampled_members(
    sweep: FamilySweep,
    grid: LogGrid,
    R: float,
    side: str,
    V: RadialPotential,
    dims: ProblemDims,
    points: np.ndarray,
) -> Tuple[List[TestFamilyParams], np.ndarray, np.ndarray]:
    params, rows, norms = [], [], []
    for p, member in sweep.members(grid, R, side):
        norm = w_norm(member, V, dims)
        if norm == 0.0:
            continue
        params.append(p)
        rows.append(member.at(points))
        norms.append(norm)
    return params, np.array(rows), np.array(norms)


def estimate_R(
    q: float,
    R: float,
    side: str,
    V: RadialPotential,
    K: RadialPotential,
    sweep: FamilySweep,
    dims: ProblemDims,
    h_sweep: Optional[FamilySweep] = None,
    grid: Optional[LogGrid] = None,
    refine: bool = True,
) -> BilinearEstimate:
    """
    Lower bound of the supremum of int K|u|^(q-1)|h| / (||u||^(q-1) ||h||).

    The product grid of u and h members is evaluated at once on shared
    points. Taking h = u recovers the S quotient, so the S estimate is also a
    lower bound and the result never falls below it.

    Raises:
        NumericalError: if either family has no usable member
    """
    _check_q(q)
    grid = grid or LogGrid()
    region = side_region(R, side)
    points = region_points(grid.nodes, *region)

    u_params, U, u_norms = _sampled_members(sweep, grid, R, side, V, dims, points)
    h_params, H, h_norms = _sampled_members(h_sweep or sweep, grid, R, side, V, dims, points)
    if not u_params or not h_params:
        raise NumericalError(f"no usable family member for q={q:g}, R={R:g}, side={side}")

    weights = dims.sphere_area * log_trapezoid_weights(points) * K(points) * points**dims.N
    numerators = (np.abs(U) ** (q - 1.0) * weights) @ np.abs(H).T
    quotients = numerators / np.outer(u_norms ** (q - 1.0), h_norms)
    i, j = np.unravel_index(int(np.argmax(quotients)), quotients.shape)

    s = estimate_S(q, R, side, V, K, sweep, dims, grid, refine)
    value = max(float(quotients[i, j]), s.value)
    logger.debug(f"R estimate q={q:g} R={R:g} {side}: {value:.6g} (S estimate {s.value:.6g})")
    return BilinearEstimate(value, u_params[i], h_params[j], s.value)


def pointwise_decay_ratio(
    u: RadialGridFunction,
    nu: float,
    window: Tuple[float, float],
    V: RadialPotential,
    dims: ProblemDims,
    norm: Optional[float] = None,
) -> float:
    """
    sup over window of |u(r)| r^nu / ||u||.

    Args:
        u: Radial function with nonzero norm
        nu: Decay exponent
        window: Radii (lo, hi) over which the supremum is taken
        V: Potential entering the norm
        dims: Problem dimensions
        norm: Precomputed norm of u, if available

    Returns:
        The ratio; 0.0 when u vanishes on the window
    """
    norm = w_norm(u, V, dims) if norm is None else norm
    if not norm > 0.0:
        raise DomainError("pointwise ratio needs a function with nonzero norm")
    radii, values = u.clipped(*window)
    if len(radii) == 0:
        return 0.0
    return float(np.max(np.abs(values) * radii**nu) / norm)


@dataclass
class ConstantsEstimate:
    """
    Empirical constants of the pointwise and Sobolev estimates.

    c_zero and c_inf are None when the matching descriptor has no lower bound on V.
    """

    C_Np: float
    S_Np: float
    c_zero: Optional[float] = None
    c_inf: Optional[float] = None
    n_members: int = 0

    def __post_init__(self) -> None:
        for name in ("C_Np", "S_Np", "c_zero", "c_inf"):
            value = getattr(self, name)
            if value is not None and not (np.isfinite(value) and value > 0.0):
                raise NumericalError(f"constant {name} must be positive and finite, got {value!r}")

    def as_dict(self) -> Dict:
        return {
            "C_Np": self.C_Np,
            "S_Np": self.S_Np,
            "c_zero": self.c_zero,
            "c_inf": self.c_inf,
            "n_members": self.n_members,
        }


def standard_sweep(dims: ProblemDims, grid: LogGrid) -> FamilySweep:
    """Windows of one and two decades tiling the grid, nu around (N-p)/p"""
    windows = []
    for k in range(grid.lo_decade + 1, grid.hi_decade - 1):
        windows.append((10.0**k, 10.0 ** (k + 1)))
        windows.append((10.0**k, 10.0 ** (k + 2)))
    return FamilySweep.around(dims, anchored=False, windows=tuple(windows))


def estimate_constants(
    V: RadialPotential,
    dims: ProblemDims,
    grid: Optional[LogGrid] = None,
    sweep: Optional[FamilySweep] = None,
    zero: Optional[ZeroDescriptor] = None,
    infinity: Optional[InfinityDescriptor] = None,
) -> ConstantsEstimate:
    """
    Family suprema of the ratios behind the pointwise and Sobolev estimates.

    C_Np and S_Np are measured against the gradient norm alone, so they hold
    for every V >= 0. c_inf and c_zero divide out the lambda-dependent factors
    of the bounds under r^gamma V >= lambda.
    """
    grid = grid or LogGrid()
    sweep = sweep or standard_sweep(dims, grid)
    members: Sequence[Tuple[TestFamilyParams, RadialGridFunction]] = sweep.members(grid)
    p = dims.p
    everywhere = (0.0, np.inf)

    C = S = 0.0
    c_zero: Optional[float] = None
    c_inf: Optional[float] = None
    for _, u in members:
        gradient = w_norm(u, ZERO_POTENTIAL, dims)
        if gradient == 0.0:
            continue
        strauss = pointwise_decay_ratio(u, dims.strauss_exponent, everywhere, ZERO_POTENTIAL, dims, gradient)
        C = max(C, strauss)
        S = max(S, lebesgue_norm(u, dims.p_star, dims) / gradient)

        norm = w_norm(u, V, dims)
        if infinity is not None and infinity.gammaInf is not None:
            ratio = pointwise_decay_ratio(
                u, dims.decay_exponent(infinity.gammaInf), (infinity.R2, np.inf), V, dims, norm
            )
            scaled = ratio * infinity.lambdaInf ** ((p - 1.0) / p**2)
            c_inf = max(c_inf or 0.0, scaled)
        if zero is not None and zero.gamma0 is not None:
            lam = zero.lambda0
            factor = ((1.0 / lam) ** ((p - 1.0) / p) + zero.R1 ** ((zero.gamma0 - p) / p) / lam) ** (1.0 / p)
            nu = dims.decay_exponent(zero.gamma0)
            ratio = pointwise_decay_ratio(u, nu, (0.0, zero.R1), V, dims, norm)
            c_zero = max(c_zero or 0.0, ratio / factor)

    if C == 0.0:
        raise NumericalError("no family member with nonzero gradient norm")
    logger.info(f"constants: C={C:.6g} S={S:.6g} c0={c_zero} cInf={c_inf} over {len(members)} members")
    return ConstantsEstimate(
        C_Np=C,
        S_Np=S,
        c_zero=c_zero or None,
        c_inf=c_inf or None,
        n_members=len(members),
    )


@dataclass
class AnnulusProbe:
    """Ratio of the two sides of the annulus bound for one function"""

    ratio: float
    t: float
    l: float
    details: Dict[str, float] = field(default_factory=dict)


def annulus_exponents(q: float, s: float, p: float) -> Tuple[float, float]:
    """
    Hoelder exponent t in (1, s) with t'q > p and the resulting l = 1/t'.

    t is the midpoint of the admissible interval (1, min{s, p/(p-q)}), the
    second bound only applying when q < p. This is not the smallest
    admissible conjugate t': that one sits at the open right end of the
    interval and is never attained, so any fixed choice inside the interval
    gives a valid bound, with a constant that depends on t.

    Raises:
        DomainError: if s <= 1 or q <= 1, when no admissible t exists
    """
    if not s > 1.0:
        raise DomainError(f"annulus bound needs t in (1, s), which requires s > 1, got s={s!r}")
    if not q > 1.0:
        raise DomainError(f"exponent must satisfy q > 1, got {q!r}")
    t_max = s if q >= p else min(s, p / (p - q))
    t = 0.5 * (1.0 + t_max)
    t_conj = t / (t - 1.0)
    return t, 1.0 / t_conj


def annulus_bound_probe(
    u: RadialGridFunction,
    K: RadialPotential,
    q: float,
    annulus: Tuple[float, float],
    s: float,
    V: RadialPotential,
    dims: ProblemDims,
) -> AnnulusProbe:
    """
    int_A K|u|^q / (||K||_{L^s(A)} ||u||^(q-lp) (int_A |u|^p)^l) on the annulus A.

    The quotient is homogeneous of degree 0 in u and should stay bounded
    over any family.
    """
    t, l = annulus_exponents(q, s, dims.p)
    norm = w_norm(u, V, dims)
    if not norm > 0.0:
        raise DomainError("annulus probe needs a function with nonzero norm")

    numerator = weighted_q_integral(u, K, q, dims, annulus)
    k_norm = weight_lebesgue_norm(K, s, dims, annulus, u.nodes)
    p_integral = lebesgue_norm(u, dims.p, dims, annulus=annulus) ** dims.p
    denominator = k_norm * norm ** (q - l * dims.p) * p_integral**l
    ratio = 0.0 if denominator == 0.0 else numerator / denominator
    return AnnulusProbe(
        ratio=float(ratio),
        t=t,
        l=l,
        details={"numerator": numerator, "K_norm": k_norm, "norm": norm, "p_integral": p_integral},
    )
