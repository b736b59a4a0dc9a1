"""Vanishing criterion and bounded-set inequalities in the sum space"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from loguru import logger

from src.numerics import RadialGridFunction
from src.utils.errors import DomainError

from .splitting import (
    SumSpaceParams,
    _part_integrals,
    level_mask,
    set_integral,
    set_norm,
    sum_norm_upper,
    threshold_grid,
)

DEFAULT_EPS_LADDER = (1e-1, 1e-2, 1e-3)
INEQUALITY_SLACK = 1e-12
NORM_DECAY_RATIO = 0.5
SET_KINDS = ("level", "annulus", "whole", "empty")


@dataclass(frozen=True)
class SplitSet:
    """
    A subset E of R^N: a level set {|u| > t}, an annulus lower < |x| <= upper,
    the whole space or the empty set.
    """

    kind: str
    lower: float = 0.0
    upper: float = np.inf
    threshold: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in SET_KINDS:
            raise DomainError(f"set kind must be one of {SET_KINDS}, got {self.kind!r}")
        if self.kind == "annulus" and not 0.0 <= self.lower <= self.upper:
            raise DomainError(f"annulus needs 0 <= lower <= upper, got ({self.lower!r}, {self.upper!r})")

    @classmethod
    def level(cls, threshold: float) -> "SplitSet":
        return cls("level", threshold=threshold)

    @classmethod
    def annulus(cls, lower: float, upper: float = np.inf) -> "SplitSet":
        return cls("annulus", lower=lower, upper=upper)

    @classmethod
    def whole(cls) -> "SplitSet":
        return cls("whole")

    @classmethod
    def empty(cls) -> "SplitSet":
        return cls("empty")

    def mask(self, u: RadialGridFunction) -> np.ndarray:
        if self.kind == "level":
            return level_mask(u, self.threshold)
        if self.kind == "annulus":
            return (u.nodes > self.lower) & (u.nodes <= self.upper)
        return np.full(u.nodes.shape, self.kind == "whole")

    def describe(self) -> str:
        if self.kind == "level":
            return f"{{|u| > {self.threshold:g}}}"
        if self.kind == "annulus":
            return f"{{{self.lower:g} < |x| <= {self.upper:g}}}"
        return self.kind


def split_integral(u: RadialGridFunction, E: SplitSet, params: SumSpaceParams) -> float:
    """int_E K|u|^q1 + int_{E^c} K|u|^q2"""
    mask = E.mask(u)
    return set_integral(u, params.q1, params, mask) + set_integral(u, params.q2, params, ~mask)


def best_level_integral(u: RadialGridFunction, params: SumSpaceParams) -> float:
    """Smallest split integral over the level sets of u"""
    low, high = _part_integrals(u, params, threshold_grid(u), u)
    return float(np.min(low + high))


@dataclass
class VanishingReport:
    """Outcome of the vanishing criterion on a finite sequence"""

    criterion_holds: bool
    per_eps: Dict[float, bool]
    split_integrals: List[float]
    norms: List[float]
    norms_vanishing: bool
    norm_ratio: Optional[float] = None
    first_index: Dict[float, Optional[int]] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.criterion_holds and self.norms_vanishing

    def as_dict(self) -> Dict:
        return {
            "holds": self.holds,
            "criterion_holds": self.criterion_holds,
            "per_eps": [
                {"eps": eps, "holds": ok, "from_index": self.first_index.get(eps)}
                for eps, ok in self.per_eps.items()
            ],
            "split_integrals": self.split_integrals,
            "norms": self.norms,
            "norms_vanishing": self.norms_vanishing,
            "norm_ratio": self.norm_ratio,
        }


def norm_decay_ratio(norms: Sequence[float]) -> Optional[float]:
    """Last norm over first; 0 for an all-zero sequence, None when undefined"""
    if len(norms) < 2:
        return None
    first, last = norms[0], norms[-1]
    if first == 0.0:
        return 0.0 if last == 0.0 else None
    return last / first


def _tail_start(satisfied: Sequence[bool]) -> Optional[int]:
    """Index from which every term satisfies the bound, None unless the last one does"""
    if not satisfied or not satisfied[-1]:
        return None
    start = len(satisfied) - 1
    while start > 0 and satisfied[start - 1]:
        start -= 1
    return start


def check_vanishing_criterion(
    sequence: Sequence[RadialGridFunction],
    params: SumSpaceParams,
    eps_ladder: Sequence[float] = DEFAULT_EPS_LADDER,
    sets: Optional[Sequence[Optional[SplitSet]]] = None,
) -> VanishingReport:
    """
    Check that for every eps some tail of the sequence satisfies
    int_{E_n} K|u_n|^q1 + int_{E_n^c} K|u_n|^q2 < eps,
    and that the upper sum norms trend to zero: the last is at most
    NORM_DECAY_RATIO times the first. Upper sum norms are minima over a
    discrete threshold grid, so single steps may rise slightly.

    Args:
        sequence: Terms u_1, ..., u_n on a shared grid
        params: Exponents and weight
        eps_ladder: Values of eps to test
        sets: E_n per term; None (or a None entry) selects the best level set

    Returns:
        VanishingReport; never raises for a failed criterion
    """
    if not sequence:
        raise DomainError("vanishing criterion needs a nonempty sequence")
    if sets is not None and len(sets) != len(sequence):
        raise DomainError("one set per term is required")

    integrals = []
    for i, u in enumerate(sequence):
        E = sets[i] if sets is not None else None
        integrals.append(best_level_integral(u, params) if E is None else split_integral(u, E, params))

    per_eps: Dict[float, bool] = {}
    first_index: Dict[float, Optional[int]] = {}
    for eps in eps_ladder:
        start = _tail_start([value < eps for value in integrals])
        per_eps[float(eps)] = start is not None
        first_index[float(eps)] = start
    criterion_holds = all(per_eps.values())

    norms = [sum_norm_upper(u, params).value for u in sequence]
    ratio = norm_decay_ratio(norms)
    norms_vanishing = ratio is not None and ratio <= NORM_DECAY_RATIO

    logger.debug(f"vanishing criterion: holds={criterion_holds}, last norm={norms[-1]:.3g}")
    return VanishingReport(
        criterion_holds=criterion_holds,
        per_eps=per_eps,
        split_integrals=integrals,
        norms=norms,
        norms_vanishing=norms_vanishing,
        norm_ratio=ratio,
        first_index=first_index,
    )


@dataclass
class BoundedSetReport:
    """Both sides of the two bounded-set inequalities"""

    sup_norm: float
    sum_norm: float
    lhs_power: float
    rhs_power: float
    holds_power: bool
    lhs_unit: Optional[float]
    rhs_unit: Optional[float]
    holds_unit: Optional[bool]

    @property
    def slack(self) -> Optional[float]:
        """rhs - lhs of the unit-bound inequality, when it applies"""
        if self.lhs_unit is None or self.rhs_unit is None:
            return None
        return self.rhs_unit - self.lhs_unit

    @property
    def passed(self) -> bool:
        return self.holds_power and self.holds_unit is not False


def prop_LL_inequality_check(
    u: RadialGridFunction,
    E: Union[SplitSet, tuple],
    params: SumSpaceParams,
) -> BoundedSetReport:
    """
    Check, with the upper sum norm on the right,
        ||u||_{q2,E}^r <= (||u||_{inf,E}^(r-1) + ||u||_{q2,E}^(r-1)) ||u||_sum,   r = q2/q1,
    and, when ||u||_{inf,E} <= 1,
        ||u||_{q2,E} <= 2 ||u||_sum + 1.

    Both right-hand sides increase with the norm, so an upper bound keeps
    them valid.
    """
    if not isinstance(E, SplitSet):
        E = SplitSet.annulus(*E)
    mask = E.mask(u)
    sup_norm = float(np.max(np.abs(u.values), where=mask, initial=0.0))
    L = set_norm(u, params.q2, params, mask)
    sum_norm = sum_norm_upper(u, params).value
    r = params.q2 / params.q1

    lhs_power = L**r
    rhs_power = (sup_norm ** (r - 1.0) + L ** (r - 1.0)) * sum_norm
    holds_power = lhs_power <= rhs_power * (1.0 + INEQUALITY_SLACK) + INEQUALITY_SLACK

    lhs_unit = rhs_unit = holds_unit = None
    if sup_norm <= 1.0:
        lhs_unit, rhs_unit = L, 2.0 * sum_norm + 1.0
        holds_unit = lhs_unit <= rhs_unit
    return BoundedSetReport(
        sup_norm=sup_norm,
        sum_norm=sum_norm,
        lhs_power=lhs_power,
        rhs_power=rhs_power,
        holds_power=bool(holds_power),
        lhs_unit=lhs_unit,
        rhs_unit=rhs_unit,
        holds_unit=holds_unit,
    )
