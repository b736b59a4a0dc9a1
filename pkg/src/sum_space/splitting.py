"""
Level-set splittings in the sum space L^q1_K + L^q2_K.

All integrals use one discrete measure per grid: trapezoid weights in
log r times sigma_{N-1} K(r) r^N at the grid nodes. Functions compared with
each other must share their nodes.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.exponents import ProblemDims
from src.numerics import RadialGridFunction, log_trapezoid_weights
from src.potentials import RadialPotential
from src.utils.errors import DomainError, NumericalError

N_THRESHOLDS = 64


@dataclass(frozen=True)
class SumSpaceParams:
    """
    Exponents 1 < q1 <= q2 < inf and weight K.

    Exponents given in decreasing order are sorted; ``swapped`` records it.
    """

    q1: float
    q2: float
    K: RadialPotential
    dims: ProblemDims
    swapped: bool = False

    def __post_init__(self) -> None:
        q1, q2 = float(self.q1), float(self.q2)
        if not (q1 > 1.0 and q2 > 1.0 and np.isfinite(q1) and np.isfinite(q2)):
            raise DomainError(f"sum-space exponents must be finite and > 1, got ({q1!r}, {q2!r})")
        if q1 > q2:
            logger.debug(f"sum-space exponents ({q1:g}, {q2:g}) reordered")
            q1, q2 = q2, q1
            object.__setattr__(self, "swapped", True)
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)

    @property
    def original_order(self) -> Tuple[float, float]:
        return (self.q2, self.q1) if self.swapped else (self.q1, self.q2)


def node_measure(nodes: np.ndarray, params: SumSpaceParams) -> np.ndarray:
    """Weight of each node in the discrete measure K(|x|) dx"""
    N = params.dims.N
    weights = params.dims.sphere_area * log_trapezoid_weights(nodes) * params.K(nodes) * nodes**N
    if not np.all(np.isfinite(weights)):
        index = int(np.flatnonzero(~np.isfinite(weights))[0])
        raise NumericalError(f"non-finite measure weight at node {index} (r={nodes[index]:.6g})")
    return weights


def set_integral(
    u: RadialGridFunction,
    q: float,
    params: SumSpaceParams,
    mask: Optional[np.ndarray] = None,
) -> float:
    """int_E K|u|^q with E given as a node mask (whole space when None)"""
    terms = node_measure(u.nodes, params) * np.abs(u.values) ** q
    if mask is not None:
        terms = np.where(mask, terms, 0.0)
    return float(np.sum(terms))


def set_norm(
    u: RadialGridFunction,
    q: float,
    params: SumSpaceParams,
    mask: Optional[np.ndarray] = None,
) -> float:
    return set_integral(u, q, params, mask) ** (1.0 / q)


@dataclass(frozen=True)
class Splitting:
    """u = u1 + u2 with u1 = u on {|ref| > t} and u2 = u on {|ref| <= t}"""

    threshold: float
    u1: RadialGridFunction
    u2: RadialGridFunction

    @classmethod
    def of(
        cls,
        u: RadialGridFunction,
        threshold: float,
        reference: Optional[RadialGridFunction] = None,
    ) -> "Splitting":
        if threshold < 0.0:
            raise DomainError(f"threshold must be nonnegative, got {threshold!r}")
        mask = level_mask(reference if reference is not None else u, threshold)
        _check_shared_nodes(u, reference)
        return cls(
            threshold=float(threshold),
            u1=u.with_values(np.where(mask, u.values, 0.0)),
            u2=u.with_values(np.where(mask, 0.0, u.values)),
        )

    def reconstructs(self, u: RadialGridFunction) -> bool:
        """u1 + u2 == u at every node, exactly"""
        return bool(np.array_equal(self.u1.values + self.u2.values, u.values))


def level_mask(u: RadialGridFunction, threshold: float) -> np.ndarray:
    return np.abs(u.values) > threshold


def _check_shared_nodes(u: RadialGridFunction, reference: Optional[RadialGridFunction]) -> None:
    if reference is not None and not np.array_equal(u.nodes, reference.nodes):
        raise DomainError("function and reference must share their nodes")


def threshold_grid(u: RadialGridFunction, n: int = N_THRESHOLDS) -> np.ndarray:
    """0, n log-spaced values between the smallest and largest nonzero |u|, and inf"""
    magnitudes = np.abs(u.values)
    nonzero = magnitudes[magnitudes > 0.0]
    if len(nonzero) == 0:
        return np.array([0.0, np.inf])
    lo, hi = float(nonzero.min()), float(nonzero.max())
    inner = np.geomspace(lo, hi, n) if hi > lo else np.array([lo])
    return np.concatenate(([0.0], inner, [np.inf]))


@dataclass
class SumNormResult:
    """Best level-set splitting found; value is an upper bound of the sum norm"""

    value: float
    threshold: float
    q1_norm: float
    q2_norm: float
    q1_integral: float
    q2_integral: float


def _part_integrals(
    u: RadialGridFunction,
    params: SumSpaceParams,
    thresholds: np.ndarray,
    reference: RadialGridFunction,
) -> Tuple[np.ndarray, np.ndarray]:
    """(int_{|ref|>t} K|u|^q1, int_{|ref|<=t} K|u|^q2) for every threshold t"""
    weights = node_measure(u.nodes, params)
    above = np.abs(reference.values)[None, :] > thresholds[:, None]
    with np.errstate(over="ignore", invalid="ignore"):
        low = weights * np.abs(u.values) ** params.q1
        high = weights * np.abs(u.values) ** params.q2
    return np.where(above, low, 0.0).sum(axis=1), np.where(above, 0.0, high).sum(axis=1)


def sum_norm_upper(
    u: RadialGridFunction,
    params: SumSpaceParams,
    thresholds: Optional[Sequence[float]] = None,
    reference: Optional[RadialGridFunction] = None,
) -> SumNormResult:
    """
    Minimize max(||u1||_{L^q1_K}, ||u2||_{L^q2_K}) over level-set splittings.

    Level-set splittings are a subfamily of all splittings, so the result is
    an upper bound of the sum norm.

    Args:
        u: Function on the grid
        params: Exponents and weight
        thresholds: Thresholds to scan; default 0, 64 log-spaced levels and inf
        reference: Function whose level sets are used instead of those of u

    Returns:
        SumNormResult for the best threshold (the first one on ties)

    Raises:
        NumericalError: if every threshold gives a non-finite part norm
    """
    _check_shared_nodes(u, reference)
    reference = reference if reference is not None else u
    grid = np.asarray(thresholds if thresholds is not None else threshold_grid(reference), dtype=float)
    if len(grid) == 0:
        raise DomainError("threshold grid is empty")

    low, high = _part_integrals(u, params, grid, reference)
    q1_norms = low ** (1.0 / params.q1)
    q2_norms = high ** (1.0 / params.q2)
    values = np.maximum(q1_norms, q2_norms)
    finite = np.isfinite(values)
    if not np.any(finite):
        raise NumericalError(
            "both parts diverge at every threshold: u lies outside the sum space numerically"
        )

    best = int(np.argmin(np.where(finite, values, np.inf)))
    return SumNormResult(
        value=float(values[best]),
        threshold=float(grid[best]),
        q1_norm=float(q1_norms[best]),
        q2_norm=float(q2_norms[best]),
        q1_integral=float(low[best]),
        q2_integral=float(high[best]),
    )
