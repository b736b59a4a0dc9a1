"""Logarithmic radial grids and sampled radial functions"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Tuple

import numpy as np

from src.utils.errors import DomainError, NumericalError


@dataclass(frozen=True)
class LogGrid:
    """
    Log-uniform radii 10^(lo_decade + k/nodes_per_decade).

    Radii that are integer powers of ten are hit exactly.
    """

    lo_decade: int = -4
    hi_decade: int = 4
    nodes_per_decade: int = 512

    def __post_init__(self) -> None:
        if self.hi_decade <= self.lo_decade:
            raise DomainError("grid needs hi_decade > lo_decade")
        if self.nodes_per_decade < 2:
            raise DomainError("grid needs at least two nodes per decade")

    @cached_property
    def nodes(self) -> np.ndarray:
        n = (self.hi_decade - self.lo_decade) * self.nodes_per_decade + 1
        nodes = 10.0 ** (self.lo_decade + np.arange(n) / self.nodes_per_decade)
        nodes.setflags(write=False)
        return nodes

    @property
    def r_min(self) -> float:
        return float(self.nodes[0])

    @property
    def r_max(self) -> float:
        return float(self.nodes[-1])

    @property
    def step(self) -> float:
        """Spacing in log r"""
        return float(np.log(10.0) / self.nodes_per_decade)

    def refined(self, factor: int = 2) -> "LogGrid":
        return LogGrid(self.lo_decade, self.hi_decade, self.nodes_per_decade * factor)


@dataclass(frozen=True)
class RadialGridFunction:
    """
    Radial function sampled on increasing radii, identically zero outside its support.

    Between nodes the function is log-linear. The support ends carry their own
    values (end_values); when these are not given, they are read off the
    zero extension, so a function is never flat across a support end.
    Instances are immutable: arrays are copied and marked read-only.
    """

    nodes: np.ndarray
    values: np.ndarray
    support: Tuple[float, float] = field(default=(0.0, np.inf))
    end_values: Optional[Tuple[float, float]] = None

    def __post_init__(self) -> None:
        nodes = np.array(self.nodes, dtype=float)
        values = np.array(self.values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape or len(nodes) < 2:
            raise DomainError("nodes and values must be matching 1-D arrays with at least two entries")
        if np.any(nodes <= 0.0) or np.any(np.diff(nodes) <= 0.0):
            raise DomainError("nodes must be positive and strictly increasing")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise NumericalError(f"non-finite value at node {bad} (r={nodes[bad]:.6g})")

        lo, hi = max(float(self.support[0]), nodes[0]), min(float(self.support[1]), nodes[-1])
        if lo > hi:
            raise DomainError(f"support {self.support} does not meet the grid")
        values[(nodes < lo) | (nodes > hi)] = 0.0
        if self.end_values is None:
            ends = np.interp(np.log([lo, hi]), np.log(nodes), values)
        else:
            ends = np.asarray(self.end_values, dtype=float)
            if ends.shape != (2,) or not np.all(np.isfinite(ends)):
                raise NumericalError(f"end values must be two finite numbers, got {self.end_values!r}")

        nodes.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "support", (lo, hi))
        object.__setattr__(self, "end_values", (float(ends[0]), float(ends[1])))

    @classmethod
    def from_callable(
        cls,
        grid: LogGrid,
        fn: Callable[[np.ndarray], np.ndarray],
        support: Optional[Tuple[float, float]] = None,
    ) -> "RadialGridFunction":
        """Sample fn on the grid nodes inside support and at the support ends"""
        support = support if support is not None else (grid.r_min, grid.r_max)
        nodes = grid.nodes
        inside = (nodes >= support[0]) & (nodes <= support[1])
        values = np.zeros_like(nodes)
        values[inside] = fn(nodes[inside])
        lo, hi = max(support[0], grid.r_min), min(support[1], grid.r_max)
        if lo > hi:
            raise DomainError(f"support {support} does not meet the grid")
        ends = np.broadcast_to(np.asarray(fn(np.array([lo, hi])), dtype=float), (2,))
        return cls(nodes, values, support, (float(ends[0]), float(ends[1])))

    def scaled(self, factor: float) -> "RadialGridFunction":
        ends = (factor * self.end_values[0], factor * self.end_values[1])
        return RadialGridFunction(self.nodes, factor * self.values, self.support, ends)

    def with_values(self, values: np.ndarray) -> "RadialGridFunction":
        return RadialGridFunction(self.nodes, values, self.support)

    @property
    def sup_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    @property
    def is_zero(self) -> bool:
        return not np.any(self.values)

    def _knots(self) -> Tuple[np.ndarray, np.ndarray]:
        """Support ends plus the nodes strictly between them"""
        lo, hi = self.support
        interior = (self.nodes > lo) & (self.nodes < hi)
        radii = np.concatenate(([lo], self.nodes[interior], [hi]))
        values = np.concatenate(([self.end_values[0]], self.values[interior], [self.end_values[1]]))
        return radii, values

    def at(self, radii: np.ndarray) -> np.ndarray:
        """Log-linear interpolation between the knots, zero outside the support"""
        radii = np.asarray(radii, dtype=float)
        lo, hi = self.support
        inside = (radii >= lo) & (radii <= hi)
        if lo == hi:
            return np.where(inside, self.end_values[0], 0.0)
        r_knots, v_knots = self._knots()
        values = np.interp(np.log(np.where(inside, radii, lo)), np.log(r_knots), v_knots)
        return np.where(inside, values, 0.0)

    def clipped(self, lower: float = 0.0, upper: float = np.inf) -> Tuple[np.ndarray, np.ndarray]:
        """
        Points and values on support intersected with [lower, upper].

        Interior nodes are kept and the two ends are added with interpolated
        values, so integrals move continuously with the bounds.

        Returns:
            Tuple (radii, values); both empty when the intersection has no length
        """
        a = max(lower, self.support[0])
        b = min(upper, self.support[1])
        if not a < b:
            return np.empty(0), np.empty(0)
        interior = (self.nodes > a) & (self.nodes < b)
        radii = np.concatenate(([a], self.nodes[interior], [b]))
        values = np.concatenate((self.at(np.array([a])), self.values[interior], self.at(np.array([b]))))
        return radii, values
