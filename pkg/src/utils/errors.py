"""Exception hierarchy shared by all subpackages"""

from typing import List, Tuple


class EmbeddingError(Exception):
    """Base class for every error raised by this package"""


class DomainError(EmbeddingError, ValueError):
    """An argument lies outside the domain of the requested quantity"""


class UndefinedAtGammaError(DomainError):
    """q_* or q_** evaluated at its singular gamma"""

    def __init__(self, quantity: str, gamma: float):
        self.quantity = quantity
        self.gamma = gamma
        super().__init__(f"{quantity} is undefined at gamma={gamma!r}")


class ThresholdExponentError(DomainError):
    """q sits on a threshold, so the decay exponent vanishes"""


class HypothesisViolationError(EmbeddingError):
    """A hypothesis of the applied criterion does not hold"""

    def __init__(self, criterion: str, inequality: str):
        self.criterion = criterion
        self.inequality = inequality
        super().__init__(f"{criterion} requires {inequality}")


class AssumptionViolationError(EmbeddingError):
    """The potentials violate the standing assumptions on V or K"""


class NumericalError(EmbeddingError, ArithmeticError):
    """Quadrature or estimation produced unusable numbers"""


class ConfigError(EmbeddingError):
    """Configuration failed schema validation"""

    def __init__(self, errors: List[Tuple[str, str]]):
        self.errors = list(errors)
        lines = [f"{path or '/'}: {message}" for path, message in self.errors]
        super().__init__("invalid configuration:\n  " + "\n  ".join(lines))
