"""Radial potentials V and K"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np
import pandas as pd
from loguru import logger

from src.utils.errors import AssumptionViolationError, DomainError

SIDES = ("zero", "infinity")


def _check_side(side: str) -> None:
    if side not in SIDES:
        raise DomainError(f"side must be one of {SIDES}, got {side!r}")


class RadialPotential(ABC):
    """Base class for radial weights r -> V(r) or r -> K(r)"""

    def __init__(self, name: str, params: Optional[Dict] = None):
        self.name = name
        self.params = params or {}

    @abstractmethod
    def __call__(self, r: np.ndarray) -> np.ndarray:
        """Evaluate at radii r > 0"""

    @abstractmethod
    def leading_term(self, side: str) -> Tuple[float, float]:
        """
        Dominant power term near zero or at infinity.

        Returns:
            Tuple of (coeff, exponent); coeff == 0 means the potential vanishes there
        """

    @abstractmethod
    def default_radius(self, side: str) -> float:
        """Radius R1 (zero side) or R2 (infinity side) used for descriptors"""

    @property
    def is_zero(self) -> bool:
        return all(self.leading_term(side)[0] == 0.0 for side in SIDES)

    @property
    def exact_power(self) -> bool:
        """True when the potential is a single power, so descriptor bounds are exact"""
        return False

    def sample_radii(self, side: str, radius: float, n: int = 2001) -> np.ndarray:
        """Log-spaced radii covering six decades inside (0, radius] or [radius, +inf)"""
        _check_side(side)
        if side == "zero":
            return np.logspace(np.log10(radius) - 6.0, np.log10(radius), n)
        return np.logspace(np.log10(radius), np.log10(radius) + 6.0, n)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.params})"


class PowerLawPotential(RadialPotential):
    """coeff * r^exponent, optionally plus second_coeff * r^second_exponent"""

    def __init__(
        self,
        coeff: float,
        exponent: float,
        second_coeff: float = 0.0,
        second_exponent: Optional[float] = None,
    ):
        if coeff < 0.0 or second_coeff < 0.0:
            raise AssumptionViolationError(
                f"power-law coefficients must be nonnegative, got {coeff}, {second_coeff}"
            )
        if second_coeff > 0.0 and second_exponent is None:
            raise DomainError("second_exponent is required when second_coeff > 0")
        super().__init__(
            "power",
            {
                "coeff": float(coeff),
                "exponent": float(exponent),
                "second_coeff": float(second_coeff),
                "second_exponent": None if second_exponent is None else float(second_exponent),
            },
        )
        self.coeff = float(coeff)
        self.exponent = float(exponent)
        self.second_coeff = float(second_coeff)
        self.second_exponent = float(second_exponent) if second_exponent is not None else 0.0

    @property
    def terms(self) -> Tuple[Tuple[float, float], ...]:
        terms = [(self.coeff, self.exponent), (self.second_coeff, self.second_exponent)]
        return tuple(t for t in terms if t[0] > 0.0)

    @property
    def exact_power(self) -> bool:
        return len(self.terms) <= 1

    def __call__(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        value = np.zeros_like(r)
        for c, e in self.terms:
            value = value + c * r**e
        return value

    def leading_term(self, side: str) -> Tuple[float, float]:
        _check_side(side)
        terms = self.terms
        if not terms:
            return 0.0, 0.0
        pick = min if side == "zero" else max
        exponent = pick(e for _, e in terms)
        return sum(c for c, e in terms if e == exponent), exponent

    def default_radius(self, side: str) -> float:
        _check_side(side)
        return 1.0


class TabulatedPotential(RadialPotential):
    """
    Potential sampled at strictly increasing radii.

    Values are interpolated in log-log (linearly where a value is zero) and
    extrapolated as powers fitted on the first and last two decades of nodes.
    """

    def __init__(
        self,
        nodes: np.ndarray,
        values: np.ndarray,
        head_exponent: Optional[float] = None,
        tail_exponent: Optional[float] = None,
        name: str = "tabulated",
    ):
        nodes = np.asarray(nodes, dtype=float)
        values = np.asarray(values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape or len(nodes) < 2:
            raise DomainError("tabulated potential needs matching 1-D node and value arrays of length >= 2")
        if np.any(nodes <= 0.0) or np.any(np.diff(nodes) <= 0.0):
            raise DomainError("tabulated nodes must be positive and strictly increasing")
        if not np.all(np.isfinite(values)):
            raise AssumptionViolationError("tabulated values must be finite")
        if np.any(values < 0.0):
            raise AssumptionViolationError("tabulated values must be nonnegative")

        super().__init__(
            name, {"n_nodes": int(len(nodes)), "r_min": float(nodes[0]), "r_max": float(nodes[-1])}
        )
        self.nodes = nodes
        self.values = values
        self.logger = logger.bind(name="TabulatedPotential")
        self.head_exponent = head_exponent if head_exponent is not None else self._fit_exponent("zero")
        self.tail_exponent = tail_exponent if tail_exponent is not None else self._fit_exponent("infinity")

    @classmethod
    def from_csv(cls, path: Union[str, Path], **kwargs) -> "TabulatedPotential":
        """Read a CSV file with columns r,value"""
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Tabulated potential not found: {path}")
        frame = pd.read_csv(path)
        missing = {"r", "value"} - set(frame.columns)
        if missing:
            raise DomainError(f"{path}: missing columns {sorted(missing)}")
        frame = frame.sort_values("r")
        return cls(frame["r"].to_numpy(), frame["value"].to_numpy(), name=path.stem, **kwargs)

    def _window(self, side: str) -> np.ndarray:
        """Boolean mask of nodes in the first or last two decades"""
        if side == "zero":
            return self.nodes <= self.nodes[0] * 100.0
        return self.nodes >= self.nodes[-1] / 100.0

    def _fit_exponent(self, side: str) -> float:
        mask = self._window(side) & (self.values > 0.0)
        if mask.sum() < 2:
            self.logger.debug(
                f"{self.name}: fewer than two positive nodes at the {side} end, exponent set to 0"
            )
            return 0.0
        slope, _ = np.polyfit(np.log(self.nodes[mask]), np.log(self.values[mask]), 1)
        return float(slope)

    def _anchor(self, side: str) -> Tuple[float, float]:
        index = 0 if side == "zero" else -1
        return float(self.nodes[index]), float(self.values[index])

    def __call__(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if np.all(self.values > 0.0):
            inside = np.exp(np.interp(np.log(r), np.log(self.nodes), np.log(self.values)))
        else:
            inside = np.interp(r, self.nodes, self.values)
        r0, v0 = self._anchor("zero")
        r1, v1 = self._anchor("infinity")
        head = v0 * (r / r0) ** self.head_exponent
        tail = v1 * (r / r1) ** self.tail_exponent
        return np.where(r < r0, head, np.where(r > r1, tail, inside))

    def leading_term(self, side: str) -> Tuple[float, float]:
        _check_side(side)
        r0, v0 = self._anchor(side)
        exponent = self.head_exponent if side == "zero" else self.tail_exponent
        return v0 / r0**exponent, exponent

    def default_radius(self, side: str) -> float:
        _check_side(side)
        if side == "zero":
            return float(min(self.nodes[0] * 10.0, self.nodes[-1]))
        return float(max(self.nodes[-1] / 10.0, self.nodes[0]))

    def sample_radii(self, side: str, radius: float, n: int = 2001) -> np.ndarray:
        """Tabulated nodes on the descriptor side of radius"""
        mask = self.nodes <= radius if side == "zero" else self.nodes >= radius
        return self.nodes[mask]


def constant_potential(value: float) -> PowerLawPotential:
    """V or K identically equal to value"""
    return PowerLawPotential(value, 0.0)
