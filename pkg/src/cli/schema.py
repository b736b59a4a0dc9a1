"""Run configuration schema"""

from pathlib import Path
from typing import Annotated, Any, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    ValidationInfo,
    field_validator,
    model_validator,
)

from src.potentials import PowerLawPotential, RadialPotential, TabulatedPotential
from src.utils.errors import ConfigError

POTENTIAL_TAGS = ("power", "two-power", "tabulated")
MODES = ("verdict", "region", "witness", "verify")


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class DimsSpec(_Strict):
    N: int = Field(ge=2)
    p: float

    @field_validator("p")
    @classmethod
    def _p_below_N(cls, p: float, info: ValidationInfo) -> float:
        N = info.data.get("N")
        if N is not None and not 1.0 < p < N:
            raise ValueError(f"exponent must satisfy 1 < p < N, got p={p!r} with N={N!r}")
        return p


class PowerSpec(_Strict):
    type: Literal["power"]
    coeff: float = Field(ge=0.0)
    exponent: float


class TwoPowerSpec(_Strict):
    type: Literal["two-power"]
    coeff: float = Field(ge=0.0)
    exponent: float
    second_coeff: float = Field(ge=0.0)
    second_exponent: float


class TabulatedSpec(_Strict):
    type: Literal["tabulated"]
    path: str
    head_exponent: Optional[float] = None
    tail_exponent: Optional[float] = None

    @field_validator("path")
    @classmethod
    def _resolve(cls, path: str, info: ValidationInfo) -> str:
        base = Path((info.context or {}).get("base_dir", "."))
        resolved = Path(path) if Path(path).is_absolute() else base / path
        if not resolved.exists():
            raise ValueError(f"tabulated file not found: {resolved}")
        return str(resolved)


PotentialSpec = Annotated[Union[PowerSpec, TwoPowerSpec, TabulatedSpec], Field(discriminator="type")]


class ZeroDescriptorSpec(_Strict):
    R1: float = 1.0
    alpha0: float
    beta0: float = 0.0
    Lambda0: float = 1.0
    gamma0: Optional[float] = None
    lambda0: Optional[float] = None


class InfinityDescriptorSpec(_Strict):
    R2: float = 1.0
    alphaInf: float
    betaInf: float = 0.0
    LambdaInf: float = 1.0
    gammaInf: Optional[float] = None
    lambdaInf: Optional[float] = None


class RegionRequest(_Strict):
    beta: float
    gamma: float
    alpha_min: float = -6.0
    alpha_max: float = 4.0
    n_samples: int = Field(default=201, ge=2)

    @model_validator(mode="after")
    def _increasing(self) -> "RegionRequest":
        if not self.alpha_min < self.alpha_max:
            raise ValueError("alpha_min must be smaller than alpha_max")
        return self


class WitnessRequest(_Strict):
    alpha: float
    q: float
    beta: float
    gamma: float
    pick: Literal["midpoint", "lower"] = "midpoint"


class AnalysisSpec(_Strict):
    mode: Literal["verdict", "region", "witness", "verify"] = "verdict"
    beta_policy: Union[Literal["best"], float] = "best"
    strict: bool = False
    R1: Optional[float] = Field(default=None, gt=0.0)
    R2: Optional[float] = Field(default=None, gt=0.0)
    zero: Optional[ZeroDescriptorSpec] = None
    infinity: Optional[InfinityDescriptorSpec] = None
    region: Optional[RegionRequest] = None
    witness: Optional[WitnessRequest] = None

    @model_validator(mode="after")
    def _mode_inputs(self) -> "AnalysisSpec":
        if self.mode == "region" and self.region is None:
            raise ValueError("mode 'region' needs a 'region' block with beta and gamma")
        if self.mode == "witness" and self.witness is None:
            raise ValueError("mode 'witness' needs a 'witness' block with alpha, q, beta and gamma")
        return self


class SumSpaceRequest(_Strict):
    q1: float = Field(default=2.0, gt=1.0)
    q2: float = Field(default=4.0, gt=1.0)


class VerifySpec(_Strict):
    q_values: List[float] = Field(default_factory=lambda: [4.0, 8.0])
    zero_radii: List[float] = Field(default_factory=lambda: [1.0, 0.5, 0.25, 0.125])
    infinity_radii: List[float] = Field(default_factory=lambda: [10.0, 20.0, 40.0, 80.0])
    nodes_per_decade: Optional[int] = Field(default=None, ge=16)
    tolerance: float = Field(default=0.3, gt=0.0)
    refine: bool = True
    bilinear: bool = False
    n_random: int = Field(default=100, ge=1)
    equivalence_samples: int = Field(default=10_000, ge=1)
    s: float = Field(default=2.0, gt=1.0)
    sum_space: SumSpaceRequest = Field(default_factory=SumSpaceRequest)
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)

    @field_validator("q_values")
    @classmethod
    def _q_above_one(cls, values: List[float]) -> List[float]:
        if any(not q > 1.0 for q in values):
            raise ValueError("every exponent must satisfy q > 1")
        return values

    @field_validator("zero_radii", "infinity_radii")
    @classmethod
    def _ladder(cls, values: List[float]) -> List[float]:
        if len(values) < 2 or any(not r > 0.0 for r in values):
            raise ValueError("an R-ladder needs at least two positive radii")
        return values


class OutputSpec(_Strict):
    dir: Optional[str] = None
    prefix: str = ""


class RunConfig(_Strict):
    """Validated run configuration"""

    dims: DimsSpec
    V: PotentialSpec
    K: PotentialSpec
    analysis: AnalysisSpec = Field(default_factory=AnalysisSpec)
    verify: VerifySpec = Field(default_factory=VerifySpec)
    output: OutputSpec = Field(default_factory=OutputSpec)


def _pointer(loc: Tuple[Any, ...]) -> str:
    """JSON pointer of a pydantic error location, without union tags"""
    parts = []
    for i, part in enumerate(loc):
        if i == 1 and loc[0] in ("V", "K") and part in POTENTIAL_TAGS:
            continue
        parts.append(str(part))
    return "/" + "/".join(parts)


def parse_config(text: str, base_dir: Optional[Union[str, Path]] = None) -> RunConfig:
    """
    Parse and validate a YAML or JSON run configuration.

    Args:
        text: Configuration text with top-level keys dims, V, K, analysis, verify, output
        base_dir: Directory that relative tabulated paths are resolved against

    Returns:
        RunConfig

    Raises:
        ConfigError: listing every schema error with its JSON pointer
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError([("", f"malformed configuration: {e}")]) from e
    return validate_config(data, base_dir)


def validate_config(data: Any, base_dir: Optional[Union[str, Path]] = None) -> RunConfig:
    """Validate an already parsed configuration mapping"""
    if not isinstance(data, dict):
        raise ConfigError([("", "configuration must be a mapping")])
    try:
        return RunConfig.model_validate(data, context={"base_dir": str(base_dir or ".")})
    except ValidationError as e:
        raise ConfigError([(_pointer(err["loc"]), err["msg"]) for err in e.errors()]) from e


def build_potential(spec: Union[PowerSpec, TwoPowerSpec, TabulatedSpec]) -> RadialPotential:
    """Instantiate the potential described by a spec"""
    if isinstance(spec, PowerSpec):
        return PowerLawPotential(spec.coeff, spec.exponent)
    if isinstance(spec, TwoPowerSpec):
        return PowerLawPotential(spec.coeff, spec.exponent, spec.second_coeff, spec.second_exponent)
    return TabulatedPotential.from_csv(
        spec.path, head_exponent=spec.head_exponent, tail_exponent=spec.tail_exponent
    )
