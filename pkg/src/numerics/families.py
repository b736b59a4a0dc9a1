"""Parametric test functions for supremum estimates"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.exponents import ProblemDims
from src.utils.errors import DomainError

from .grid import LogGrid, RadialGridFunction

SIDES = ("zero", "infinity")


def smoothstep(x: np.ndarray) -> np.ndarray:
    """Quintic 6x^5 - 15x^4 + 10x^3 clamped to [0, 1]; C^2 at both ends"""
    x = np.clip(x, 0.0, 1.0)
    return x**3 * (x * (6.0 * x - 15.0) + 10.0)


@dataclass(frozen=True)
class TestFamilyParams:
    """
    Member u(r) = (r/a)^(-nu) chi(r) with chi a smooth plateau on [a, b].

    chi rises from 0 at a to 1 at a*e^width and falls back to 0 at b on the
    log scale.
    """

    __test__ = False

    nu: float
    inner: float
    outer: float
    width: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.inner < self.outer:
            raise DomainError(f"family window must satisfy 0 < a < b, got ({self.inner!r}, {self.outer!r})")
        if not self.width > 0.0:
            raise DomainError(f"smoothing width must be positive, got {self.width!r}")

    def plateau(self, r: np.ndarray) -> np.ndarray:
        t = np.log(r)
        rise = smoothstep((t - np.log(self.inner)) / self.width)
        fall = smoothstep((np.log(self.outer) - t) / self.width)
        return rise * fall

    def __call__(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return (r / self.inner) ** (-self.nu) * self.plateau(r)

    def fits(self, grid: LogGrid) -> bool:
        return grid.r_min <= self.inner and self.outer <= grid.r_max

    def member(self, grid: LogGrid) -> RadialGridFunction:
        return RadialGridFunction.from_callable(grid, self, support=(self.inner, self.outer))

    def with_nu(self, nu: float) -> "TestFamilyParams":
        return TestFamilyParams(nu, self.inner, self.outer, self.width)

    def as_dict(self) -> dict:
        return {"nu": self.nu, "inner": self.inner, "outer": self.outer, "width": self.width}


@dataclass(frozen=True)
class FamilySweep:
    """
    Grid of family parameters: every nu against every window.

    Anchored sweeps place windows relative to the radius R of the estimate,
    inside [R, inf) at infinity (a = R*anchor, b = a*span) and inside (0, R]
    near zero (b = R/anchor, a = b/span). Unanchored sweeps use the absolute
    windows as given.
    """

    nu_values: Tuple[float, ...]
    anchors: Tuple[float, ...] = (1.0, 2.0)
    spans: Tuple[float, ...] = (10.0, 50.0)
    width: float = 0.5
    windows: Tuple[Tuple[float, float], ...] = ()
    anchored: bool = True

    def __post_init__(self) -> None:
        if not self.nu_values:
            raise DomainError("a family sweep needs at least one nu value")
        if any(a < 1.0 for a in self.anchors) or any(s <= 1.0 for s in self.spans):
            raise DomainError("anchors must be >= 1 and spans > 1")
        if not self.anchored and not self.windows:
            raise DomainError("an unanchored sweep needs explicit windows")

    @classmethod
    def around(cls, dims: ProblemDims, n_nu: int = 9, **kwargs) -> "FamilySweep":
        """nu over [0, 2(N-p)/p], bracketing the decay exponent of the pointwise estimate"""
        nu_values = tuple(float(v) for v in dims.strauss_exponent * np.linspace(0.0, 2.0, n_nu))
        return cls(nu_values=nu_values, **kwargs)

    def windows_for(self, R: float, side: str) -> List[Tuple[float, float]]:
        if side not in SIDES:
            raise DomainError(f"side must be one of {SIDES}, got {side!r}")
        if not self.anchored:
            return list(self.windows)
        windows = []
        for anchor in self.anchors:
            for span in self.spans:
                if side == "infinity":
                    a = R * anchor
                    windows.append((a, a * span))
                else:
                    b = R / anchor
                    windows.append((b / span, b))
        return windows

    def params(self, R: float = 1.0, side: str = "zero") -> List[TestFamilyParams]:
        return [
            TestFamilyParams(nu, a, b, self.width)
            for a, b in self.windows_for(R, side)
            for nu in self.nu_values
        ]

    def members(
        self, grid: LogGrid, R: float = 1.0, side: str = "zero"
    ) -> List[Tuple[TestFamilyParams, RadialGridFunction]]:
        """Sampled members; windows leaving the grid are skipped with a warning"""
        members = []
        skipped = 0
        for params in self.params(R, side):
            if not params.fits(grid):
                skipped += 1
                continue
            members.append((params, params.member(grid)))
        if skipped:
            logger.warning(
                f"{skipped} family members leave the grid "
                f"[{grid.r_min:g}, {grid.r_max:g}] and were skipped"
            )
        return members


def bump(
    grid: LogGrid,
    center: float,
    width: float,
    amplitude: float = 1.0,
) -> RadialGridFunction:
    """amplitude * cos^2(pi (r - center)/width) on |r - center| <= width/2"""
    lo, hi = center - 0.5 * width, center + 0.5 * width
    if not lo > 0.0:
        raise DomainError(f"bump must stay away from the origin, got center={center!r}, width={width!r}")
    return RadialGridFunction.from_callable(
        grid,
        lambda r: amplitude * np.cos(np.pi * (r - center) / width) ** 2,
        support=(lo, hi),
    )


def random_bumps(
    grid: LogGrid,
    rng: np.random.Generator,
    n: int,
    annulus: Tuple[float, float],
    max_amplitude: float = 1.0,
    widths: Optional[Sequence[float]] = None,
) -> List[RadialGridFunction]:
    """
    Random cos^2 bumps supported inside annulus.

    Widths are drawn from [0.1, 1] times the annulus length unless given.
    """
    lo, hi = annulus
    length = hi - lo
    bumps = []
    for i in range(n):
        width = float(widths[i % len(widths)]) if widths else float(rng.uniform(0.1, 1.0) * length)
        width = min(width, length)
        center = float(rng.uniform(lo + 0.5 * width, hi - 0.5 * width))
        amplitude = float(rng.uniform(0.05, 1.0) * max_amplitude)
        bumps.append(bump(grid, center, width, amplitude))
    return bumps
