"""Radial grids, quadrature norms, supremum estimates and decay experiments"""

from .grid import LogGrid, RadialGridFunction
from .norms import (
    log_trapezoid_weights,
    region_points,
    gradient_integral,
    potential_integral,
    w_norm,
    weighted_q_integral,
    lebesgue_norm,
    weight_lebesgue_norm,
)
from .families import TestFamilyParams, FamilySweep, smoothstep, bump, random_bumps
from .estimates import (
    SupremumEstimate,
    BilinearEstimate,
    ConstantsEstimate,
    AnnulusProbe,
    side_region,
    estimate_S,
    estimate_R,
    pointwise_decay_ratio,
    standard_sweep,
    estimate_constants,
    annulus_exponents,
    annulus_bound_probe,
)
from .experiments import (
    DecayExperimentConfig,
    DecayExperimentResult,
    SharpnessProbe,
    theoretical_decay_exponent,
    decay_slope_experiment,
    threshold_sharpness_probe,
    ladder,
)

__all__ = [
    "LogGrid",
    "RadialGridFunction",
    "log_trapezoid_weights",
    "region_points",
    "gradient_integral",
    "potential_integral",
    "w_norm",
    "weighted_q_integral",
    "lebesgue_norm",
    "weight_lebesgue_norm",
    "TestFamilyParams",
    "FamilySweep",
    "smoothstep",
    "bump",
    "random_bumps",
    "SupremumEstimate",
    "BilinearEstimate",
    "ConstantsEstimate",
    "AnnulusProbe",
    "side_region",
    "estimate_S",
    "estimate_R",
    "pointwise_decay_ratio",
    "standard_sweep",
    "estimate_constants",
    "annulus_exponents",
    "annulus_bound_probe",
    "DecayExperimentConfig",
    "DecayExperimentResult",
    "SharpnessProbe",
    "theoretical_decay_exponent",
    "decay_slope_experiment",
    "threshold_sharpness_probe",
    "ladder",
]
