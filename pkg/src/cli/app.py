"""Command-line entry point: analyze, region, witness and verify"""

import argparse
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import yaml
from loguru import logger
from pydantic import ValidationError

from src.exponents import (
    ExponentPoint,
    InfinityDescriptor,
    ProblemDims,
    RegionSpec,
    ZeroDescriptor,
    compute_verdict,
    find_xi_witness,
    region_boundary,
    region_membership,
    validate_xi,
    xi_interval,
)
from src.potentials import (
    RadialPotential,
    fit_infinity_descriptor,
    fit_zero_descriptor,
    validate_assumptions,
)
from src.utils.config import Settings, get_settings, load_config
from src.utils.errors import (
    AssumptionViolationError,
    ConfigError,
    DomainError,
    EmbeddingError,
    HypothesisViolationError,
)
from src.utils.helpers import dumps_exact
from src.utils.logger import setup_logger

from .report import VerdictReport, write_json, write_region
from .schema import RunConfig, build_potential, validate_config
from .suite import VerifyReport, run_suite

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_HYPOTHESIS = 3
EXIT_VERIFY = 4

DEFAULT_CONFIG = "config/embedding_config.yaml"


def create_parser() -> argparse.ArgumentParser:
    """
    Create command-line argument parser with subcommands.

    Returns:
        Configured ArgumentParser instance
    """
    parser = argparse.ArgumentParser(
        prog="radial-embed",
        description="Compact embeddings of weighted radial Sobolev spaces into weighted Lebesgue spaces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  radial-embed analyze --config config/embedding_config.yaml
  radial-embed region --config config/embedding_config.yaml --out results
  radial-embed witness --config config/embedding_config.yaml
  radial-embed verify --seed 7 --nodes-per-decade 256
        """,
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", default=DEFAULT_CONFIG, help=f"Run configuration (default: {DEFAULT_CONFIG})"
    )
    common.add_argument(
        "--out", default=None, help="Output directory (default: output.dir of the config)"
    )
    common.add_argument("--log-level", default=None, help="Logging level (default: from settings)")

    subparsers = parser.add_subparsers(dest="command", help="Analysis commands")
    subparsers.add_parser(
        "analyze", parents=[common], help="Admissible exponent ranges for V and K"
    )
    subparsers.add_parser(
        "region", parents=[common], help="Boundary polylines of the (alpha, q) region"
    )
    subparsers.add_parser(
        "witness", parents=[common], help="Shift witness for one (alpha, q) point"
    )

    cmd_verify = subparsers.add_parser(
        "verify", parents=[common], help="Run the numerical verification suite"
    )
    cmd_verify.add_argument(
        "--seed", type=int, default=None, help="64-bit seed for the random sweeps"
    )
    cmd_verify.add_argument(
        "--nodes-per-decade", type=int, default=None, help="Radial grid resolution"
    )

    return parser


def load_run_config(path: str) -> RunConfig:
    """Read and validate a configuration file; relative table paths resolve against its directory"""
    config_path = Path(path)
    try:
        data = load_config(config_path)
    except FileNotFoundError as e:
        raise ConfigError([("", str(e))]) from e
    except yaml.YAMLError as e:
        raise ConfigError([("", f"malformed configuration: {e}")]) from e
    return validate_config(data, base_dir=config_path.parent)


def build_problem(config: RunConfig) -> Tuple[ProblemDims, RadialPotential, RadialPotential]:
    dims = ProblemDims(config.dims.N, config.dims.p)
    return dims, build_potential(config.V), build_potential(config.K)


def fit_descriptors(
    config: RunConfig,
    V: RadialPotential,
    K: RadialPotential,
    dims: ProblemDims,
) -> Tuple[ZeroDescriptor, InfinityDescriptor]:
    """Descriptors given in the config win; missing ones are fitted from V and K"""
    analysis = config.analysis
    if analysis.zero is not None:
        zero = ZeroDescriptor(**analysis.zero.model_dump())
    else:
        zero = fit_zero_descriptor(V, K, dims, analysis.beta_policy, analysis.R1)
    if analysis.infinity is not None:
        infinity = InfinityDescriptor(**analysis.infinity.model_dump())
    else:
        infinity = fit_infinity_descriptor(V, K, dims, analysis.beta_policy, analysis.R2)
    return zero, infinity


def _out_dir(args: argparse.Namespace, config: RunConfig) -> Optional[Path]:
    """--out first, then output.dir; None keeps results on stdout only"""
    if args.out:
        return Path(args.out)
    if config.output.dir:
        return Path(config.output.dir)
    return None


def run_analyze(config: RunConfig, out_dir: Optional[Path] = None) -> VerdictReport:
    """
    Fit descriptors, compute the verdict and attach the assumption checks.

    Raises:
        HypothesisViolationError: only when analysis.strict is set
    """
    dims, V, K = build_problem(config)
    zero, infinity = fit_descriptors(config, V, K, dims)
    verdict = compute_verdict(zero, infinity, dims, strict=config.analysis.strict)
    assumptions = validate_assumptions(V, K, dims, config.verify.s)
    if not assumptions.passed:
        logger.warning(f"assumption checks failed:\n{assumptions.summary()}")

    report = VerdictReport.from_verdict(verdict, dims, [asdict(c) for c in assumptions.checks])
    logger.info(verdict.summary())
    if out_dir is not None:
        write_json(report.to_dict(), out_dir / f"{config.output.prefix}verdict.json")
    return report


def run_region(config: RunConfig, out_dir: Path) -> Dict[str, Path]:
    request = config.analysis.region
    if request is None:
        raise ConfigError([("/analysis/region", "the region command needs beta and gamma")])
    dims = ProblemDims(config.dims.N, config.dims.p)
    region = RegionSpec.build(request.beta, request.gamma, dims)
    alpha_range = (request.alpha_min, request.alpha_max)
    boundary = region_boundary(region, alpha_range, request.n_samples, dims)
    return write_region(boundary, out_dir, config.output.prefix)


def run_witness(config: RunConfig) -> Dict[str, Any]:
    """Witness, feasible interval and region membership of one point"""
    request = config.analysis.witness
    if request is None:
        message = "the witness command needs alpha, q, beta and gamma"
        raise ConfigError([("/analysis/witness", message)])
    dims = ProblemDims(config.dims.N, config.dims.p)
    point = ExponentPoint(request.alpha, request.q)
    region = RegionSpec.build(request.beta, request.gamma, dims)
    witness = find_xi_witness(point, request.beta, request.gamma, dims, pick=request.pick)
    return {
        "point": {"alpha": point.alpha, "q": point.q},
        "beta": request.beta,
        "gamma": region.gamma,
        "case": region.case.value,
        "interval": xi_interval(point, region, dims).as_dict(),
        "witness": witness.as_dict() if witness is not None else None,
        "validated": witness is not None
        and validate_xi(point, request.beta, request.gamma, witness.xi, dims),
        "member": region_membership(point, region, dims),
    }


def run_verify(
    config: RunConfig,
    seed: int,
    nodes_per_decade: int,
    out_dir: Optional[Path] = None,
) -> VerifyReport:
    """
    Run the verification suite on the configured problem.

    Inadmissible experiments are reported as refused and do not fail the run.
    """
    dims, V, K = build_problem(config)
    zero, infinity = fit_descriptors(config, V, K, dims)
    verdict = compute_verdict(zero, infinity, dims)
    report = run_suite(
        V, K, dims, zero, infinity, verdict, config.verify, seed, nodes_per_decade
    )
    if out_dir is not None:
        write_json(report.as_dict(), out_dir / f"{config.output.prefix}verify.json")
    return report


def _resolve_seed(args: argparse.Namespace, config: RunConfig, settings: Settings) -> int:
    if getattr(args, "seed", None) is not None:
        return int(args.seed)
    if config.verify.seed is not None:
        return config.verify.seed
    return settings.seed


def _resolve_nodes(args: argparse.Namespace, config: RunConfig, settings: Settings) -> int:
    if getattr(args, "nodes_per_decade", None) is not None:
        return int(args.nodes_per_decade)
    if config.verify.nodes_per_decade is not None:
        return config.verify.nodes_per_decade
    return settings.nodes_per_decade


def cmd_analyze(args: argparse.Namespace, config: RunConfig, settings: Settings) -> int:
    report = run_analyze(config, _out_dir(args, config))
    print(report.to_json())
    return EXIT_OK


def cmd_region(args: argparse.Namespace, config: RunConfig, settings: Settings) -> int:
    out_dir = _out_dir(args, config) or Path(settings.output_dir)
    for path in run_region(config, out_dir).values():
        print(f"Saved: {path}")
    return EXIT_OK


def cmd_witness(args: argparse.Namespace, config: RunConfig, settings: Settings) -> int:
    result = run_witness(config)
    out_dir = _out_dir(args, config)
    if out_dir is not None:
        write_json(result, out_dir / f"{config.output.prefix}witness.json")
    print(dumps_exact(result))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: RunConfig, settings: Settings) -> int:
    seed = _resolve_seed(args, config, settings)
    nodes = _resolve_nodes(args, config, settings)
    report = run_verify(config, seed, nodes, _out_dir(args, config))
    print(dumps_exact(report.as_dict()))
    return EXIT_OK if report.passed else EXIT_VERIFY


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig, Settings], int]] = {
    "analyze": cmd_analyze,
    "region": cmd_region,
    "witness": cmd_witness,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point; returns the process exit code"""
    parser = create_parser()
    args = parser.parse_args(argv)
    if args.command not in COMMANDS:
        parser.print_help()
        return EXIT_ERROR

    try:
        settings = get_settings()
    except ValidationError as e:
        logger.error(f"invalid RADIAL_EMBED_* environment settings: {e}")
        return EXIT_CONFIG
    setup_logger("radial-embed", args.log_level or settings.log_level, settings.log_file or None)

    try:
        config = load_run_config(args.config)
        return COMMANDS[args.command](args, config, settings)
    except (ConfigError, DomainError) as e:
        logger.error(str(e))
        return EXIT_CONFIG
    except (HypothesisViolationError, AssumptionViolationError) as e:
        logger.error(str(e))
        return EXIT_HYPOTHESIS
    except EmbeddingError as e:
        logger.error(f"Command failed: {e}")
        return EXIT_ERROR
    except Exception as e:
        logger.exception(f"Command failed unexpectedly: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
