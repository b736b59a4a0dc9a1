"""Quadrature norms of radial grid functions"""

from typing import Optional, Tuple

import numpy as np

from src.exponents import ProblemDims
from src.potentials import RadialPotential
from src.utils.errors import DomainError, NumericalError

from .grid import RadialGridFunction

# Relative size of an end summand above which a truncated integral is treated as divergent
TAIL_TOLERANCE = 1e-6


def log_trapezoid_weights(radii: np.ndarray) -> np.ndarray:
    """Trapezoid weights in log r for increasing radii"""
    radii = np.asarray(radii, dtype=float)
    if len(radii) < 2:
        return np.zeros_like(radii)
    h = np.diff(np.log(radii))
    weights = np.zeros_like(radii)
    weights[:-1] += 0.5 * h
    weights[1:] += 0.5 * h
    return weights


def region_points(nodes: np.ndarray, lower: float, upper: float) -> np.ndarray:
    """The ends of [lower, upper] together with the nodes strictly between them"""
    lower = max(lower, float(nodes[0]))
    upper = min(upper, float(nodes[-1]))
    if not lower < upper:
        return np.empty(0)
    interior = nodes[(nodes > lower) & (nodes < upper)]
    return np.concatenate(([lower], interior, [upper]))


def _check_finite(radii: np.ndarray, integrand: np.ndarray, what: str) -> None:
    bad = ~np.isfinite(integrand)
    if np.any(bad):
        index = int(np.flatnonzero(bad)[0])
        raise NumericalError(f"non-finite {what} integrand at node {index} (r={radii[index]:.6g})")


def gradient_integral(u: RadialGridFunction, dims: ProblemDims) -> float:
    """
    Integral of |u'|^p r^(N-1) over (0, inf), without the sphere factor.

    Cell difference quotients are placed at geometric cell midpoints and
    integrated by the midpoint rule in log r.
    """
    radii, values = u.clipped()
    if len(radii) < 2:
        return 0.0
    slopes = np.diff(values) / np.diff(radii)
    mid = np.sqrt(radii[:-1] * radii[1:])
    h = np.diff(np.log(radii))
    with np.errstate(over="ignore", invalid="ignore"):
        integrand = np.abs(slopes) ** dims.p * mid**dims.N
    _check_finite(mid, integrand, "gradient")
    return float(np.sum(h * integrand))


def potential_integral(u: RadialGridFunction, V: RadialPotential, dims: ProblemDims) -> float:
    """Integral of V |u|^p r^(N-1) over (0, inf), without the sphere factor"""
    if V.is_zero:
        return 0.0
    radii, values = u.clipped()
    if len(radii) < 2:
        return 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        integrand = V(radii) * np.abs(values) ** dims.p * radii**dims.N
    _check_finite(radii, integrand, "potential")
    return float(np.dot(log_trapezoid_weights(radii), integrand))


def w_norm(u: RadialGridFunction, V: RadialPotential, dims: ProblemDims) -> float:
    """
    Norm (int |grad u|^p + V |u|^p dx)^(1/p) of a radial function on R^N.

    Args:
        u: Radial function; should vanish at the ends of its support
        V: Potential
        dims: Problem dimensions

    Returns:
        The norm, 0.0 for the zero function

    Raises:
        NumericalError: if an integrand is not finite
    """
    total = gradient_integral(u, dims) + potential_integral(u, V, dims)
    return float((dims.sphere_area * total) ** (1.0 / dims.p))


def _check_truncation(
    u: RadialGridFunction,
    radii: np.ndarray,
    terms: np.ndarray,
    total: float,
    annulus: Tuple[float, float],
) -> None:
    """Raise when an end of the integral sits on the grid edge with a non-negligible summand"""
    scale = abs(total)
    if scale == 0.0:
        return
    if annulus[0] <= u.nodes[0] and u.support[0] <= u.nodes[0] and terms[0] > TAIL_TOLERANCE * scale:
        raise NumericalError(
            f"integral diverges near zero: summand {terms[0]:.3g} at r={radii[0]:.3g} does not decay"
        )
    if annulus[1] >= u.nodes[-1] and u.support[1] >= u.nodes[-1] and terms[-1] > TAIL_TOLERANCE * scale:
        raise NumericalError(
            f"integral diverges at infinity: summand {terms[-1]:.3g} at r={radii[-1]:.3g} does not decay"
        )


def weighted_q_integral(
    u: RadialGridFunction,
    K: RadialPotential,
    q: float,
    dims: ProblemDims,
    annulus: Tuple[float, float] = (0.0, np.inf),
) -> float:
    """
    Integral of K |u|^q over the shell annulus[0] < |x| <= annulus[1] of R^N.

    Args:
        u: Radial function
        K: Weight
        q: Exponent, q > 1
        dims: Problem dimensions
        annulus: Radii (r, R); R may be inf

    Returns:
        The integral, 0.0 for an empty annulus

    Raises:
        DomainError: if q <= 1
        NumericalError: for a non-finite integrand or a tail that does not decay
    """
    if not q > 1.0:
        raise DomainError(f"exponent must satisfy q > 1, got {q!r}")
    radii, values = u.clipped(*annulus)
    if len(radii) < 2:
        return 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        integrand = K(radii) * np.abs(values) ** q * radii**dims.N
    _check_finite(radii, integrand, "weighted")
    terms = log_trapezoid_weights(radii) * integrand
    total = float(np.sum(terms))
    _check_truncation(u, radii, terms, total, annulus)
    return dims.sphere_area * total


def lebesgue_norm(
    u: RadialGridFunction,
    q: float,
    dims: ProblemDims,
    K: Optional[RadialPotential] = None,
    annulus: Tuple[float, float] = (0.0, np.inf),
) -> float:
    """(int K |u|^q)^(1/q), unweighted when K is None"""
    if K is None:
        radii, values = u.clipped(*annulus)
        if len(radii) < 2:
            return 0.0
        integrand = np.abs(values) ** q * radii**dims.N
        _check_finite(radii, integrand, "Lebesgue")
        total = dims.sphere_area * float(np.dot(log_trapezoid_weights(radii), integrand))
    else:
        total = weighted_q_integral(u, K, q, dims, annulus)
    return float(total ** (1.0 / q))


def weight_lebesgue_norm(
    K: RadialPotential,
    s: float,
    dims: ProblemDims,
    annulus: Tuple[float, float],
    nodes: np.ndarray,
) -> float:
    """(int_annulus K^s)^(1/s), sampled at nodes"""
    radii = region_points(nodes, *annulus)
    if len(radii) < 2:
        return 0.0
    integrand = K(radii) ** s * radii**dims.N
    _check_finite(radii, integrand, "weight")
    total = dims.sphere_area * float(np.dot(log_trapezoid_weights(radii), integrand))
    return float(total ** (1.0 / s))
