"""Utilities module"""

from .logger import setup_logger, get_logger
from .config import Settings, load_config, get_settings
from .errors import (
    EmbeddingError,
    DomainError,
    UndefinedAtGammaError,
    ThresholdExponentError,
    HypothesisViolationError,
    AssumptionViolationError,
    NumericalError,
    ConfigError,
)
from .helpers import (
    sphere_area,
    nearly_equal,
    fit_loglog_slope,
    format_float,
    dumps_exact,
)

__all__ = [
    "setup_logger",
    "get_logger",
    "Settings",
    "load_config",
    "get_settings",
    "EmbeddingError",
    "DomainError",
    "UndefinedAtGammaError",
    "ThresholdExponentError",
    "HypothesisViolationError",
    "AssumptionViolationError",
    "NumericalError",
    "ConfigError",
    "sphere_area",
    "nearly_equal",
    "fit_loglog_slope",
    "format_float",
    "dumps_exact",
]
