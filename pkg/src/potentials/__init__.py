"""Concrete potentials, assumption checks and descriptor extraction"""

from .model import RadialPotential, PowerLawPotential, TabulatedPotential, constant_potential
from .descriptors import fit_zero_descriptor, fit_infinity_descriptor
from .assumptions import (
    KLocalIntegrability,
    AssumptionCheck,
    AssumptionReport,
    validate_assumptions,
)

__all__ = [
    "RadialPotential",
    "PowerLawPotential",
    "TabulatedPotential",
    "constant_potential",
    "fit_zero_descriptor",
    "fit_infinity_descriptor",
    "KLocalIntegrability",
    "AssumptionCheck",
    "AssumptionReport",
    "validate_assumptions",
]
