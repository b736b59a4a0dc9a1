"""Configuration schema, reports, verification suite and the command-line entry point"""

from .schema import RunConfig, parse_config, validate_config, build_potential
from .report import VerdictReport, write_json, region_csv, write_region
from .suite import (
    ExperimentEntry,
    VerifyReport,
    canonical_sequences,
    run_guarded,
    run_suite,
    sharpness_threshold,
)
from .app import (
    EXIT_OK,
    EXIT_ERROR,
    EXIT_CONFIG,
    EXIT_HYPOTHESIS,
    EXIT_VERIFY,
    create_parser,
    load_run_config,
    fit_descriptors,
    run_analyze,
    run_region,
    run_witness,
    run_verify,
    main,
)

__all__ = [
    "RunConfig",
    "parse_config",
    "validate_config",
    "build_potential",
    "VerdictReport",
    "write_json",
    "region_csv",
    "write_region",
    "ExperimentEntry",
    "VerifyReport",
    "canonical_sequences",
    "run_guarded",
    "sharpness_threshold",
    "run_suite",
    "EXIT_OK",
    "EXIT_ERROR",
    "EXIT_CONFIG",
    "EXIT_HYPOTHESIS",
    "EXIT_VERIFY",
    "create_parser",
    "load_run_config",
    "fit_descriptors",
    "run_analyze",
    "run_region",
    "run_witness",
    "run_verify",
    "main",
]
