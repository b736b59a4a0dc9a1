"""Sum space L^q1_K + L^q2_K: splittings, upper norms and vanishing criteria"""

from .splitting import (
    SumSpaceParams,
    Splitting,
    SumNormResult,
    node_measure,
    set_integral,
    set_norm,
    level_mask,
    threshold_grid,
    sum_norm_upper,
)
from .criteria import (
    NORM_DECAY_RATIO,
    SplitSet,
    VanishingReport,
    BoundedSetReport,
    split_integral,
    best_level_integral,
    check_vanishing_criterion,
    norm_decay_ratio,
    prop_LL_inequality_check,
)

__all__ = [
    "NORM_DECAY_RATIO",
    "SumSpaceParams",
    "Splitting",
    "SumNormResult",
    "node_measure",
    "set_integral",
    "set_norm",
    "level_mask",
    "threshold_grid",
    "sum_norm_upper",
    "SplitSet",
    "VanishingReport",
    "BoundedSetReport",
    "split_integral",
    "best_level_integral",
    "check_vanishing_criterion",
    "norm_decay_ratio",
    "prop_LL_inequality_check",
]
