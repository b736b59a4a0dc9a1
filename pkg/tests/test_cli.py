"""Tests for configuration parsing, reports and the command-line entry point"""

import json
import textwrap

import numpy as np
import pandas as pd
import pytest

from src.cli import (
    EXIT_CONFIG,
    EXIT_ERROR,
    EXIT_HYPOTHESIS,
    EXIT_OK,
    ExperimentEntry,
    VerifyReport,
    canonical_sequences,
    main,
    parse_config,
    run_guarded,
    run_witness,
    sharpness_threshold,
)
from src.cli.app import COMMANDS, create_parser
from src.cli.schema import build_potential
from src.exponents import InfinityDescriptor, ProblemDims, ZeroDescriptor, compute_verdict
from src.numerics import LogGrid
from src.potentials import PowerLawPotential, TabulatedPotential
from src.sum_space import check_vanishing_criterion
from src.utils.errors import (
    ConfigError,
    DomainError,
    HypothesisViolationError,
    NumericalError,
    ThresholdExponentError,
)

BASE = """
dims:
  N: 3
  p: 2.0
V:
  type: power
  coeff: 0.0
  exponent: 0.0
K:
  type: power
  coeff: 1.0
  exponent: 0.0
"""
POWER_V = "V:\n  type: power\n  coeff: 0.0\n  exponent: 0.0"


def write_config(tmp_path, extra: str = "", base: str = BASE):
    path = tmp_path / "config.yaml"
    path.write_text(base + textwrap.dedent(extra))
    return path


def pointers(error: ConfigError):
    return [path for path, _ in error.errors]


class TestParseConfig:
    """Test schema validation and error pointers"""

    def test_valid_config(self):
        config = parse_config(BASE)
        assert config.dims.N == 3
        assert config.analysis.mode == "verdict"
        assert config.verify.q_values == [4.0, 8.0]
        assert config.output.prefix == ""

    def test_p_not_below_N(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config(BASE.replace("p: 2.0", "p: 3.0"))
        assert pointers(excinfo.value) == ["/dims/p"]

    def test_missing_weight(self):
        text = BASE.split("K:")[0]
        with pytest.raises(ConfigError) as excinfo:
            parse_config(text)
        assert "/K" in pointers(excinfo.value)

    def test_negative_coefficient_points_into_potential(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config(BASE.replace("coeff: 0.0", "coeff: -1.0"))
        assert pointers(excinfo.value) == ["/V/coeff"]

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config(BASE + "extra: 1\n")
        assert pointers(excinfo.value) == ["/extra"]

    def test_mode_needs_its_block(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config(BASE + "analysis:\n  mode: region\n")
        assert pointers(excinfo.value) == ["/analysis"]

    def test_malformed_yaml(self):
        with pytest.raises(ConfigError):
            parse_config("dims: [")

    def test_not_a_mapping(self):
        with pytest.raises(ConfigError):
            parse_config("- 1\n- 2\n")

    def test_json_is_accepted(self):
        text = (
            '{"dims": {"N": 4, "p": 2}, "V": {"type": "power", "coeff": 1, "exponent": 0},'
            ' "K": {"type": "power", "coeff": 1, "exponent": 0}}'
        )
        assert parse_config(text).dims.N == 4

    def test_tabulated_path_resolves_against_base_dir(self, tmp_path):
        nodes = np.logspace(-1.0, 1.0, 21)
        pd.DataFrame({"r": nodes, "value": 1.0 / nodes}).to_csv(tmp_path / "v.csv", index=False)
        text = BASE.replace(POWER_V, "V:\n  type: tabulated\n  path: v.csv")
        config = parse_config(text, base_dir=tmp_path)
        V = build_potential(config.V)
        assert isinstance(V, TabulatedPotential)
        assert V.tail_exponent == pytest.approx(-1.0)

    def test_missing_table(self, tmp_path):
        text = BASE.replace(POWER_V, "V:\n  type: tabulated\n  path: no.csv")
        with pytest.raises(ConfigError) as excinfo:
            parse_config(text, base_dir=tmp_path)
        assert pointers(excinfo.value) == ["/V/path"]

    def test_two_power_potential(self):
        text = BASE.replace(
            POWER_V,
            "V:\n  type: two-power\n  coeff: 1.0\n  exponent: -1.0\n  second_coeff: 2.0\n  second_exponent: 1.0",
        )
        V = build_potential(parse_config(text).V)
        assert isinstance(V, PowerLawPotential)
        assert np.isclose(V(np.array([1.0]))[0], 3.0)


class TestParser:
    """Test argument parsing"""

    def test_verify_options(self):
        args = create_parser().parse_args(["verify", "--seed", "7", "--nodes-per-decade", "64"])
        assert args.command == "verify"
        assert args.seed == 7
        assert args.nodes_per_decade == 64

    def test_common_options(self):
        args = create_parser().parse_args(["analyze", "--config", "c.yaml", "--out", "o"])
        assert (args.config, args.out) == ("c.yaml", "o")


class TestMain:
    """Test commands and exit codes"""

    def test_no_command(self):
        assert main([]) == EXIT_ERROR

    def test_missing_config(self, tmp_path):
        assert main(["analyze", "--config", str(tmp_path / "missing.yaml")]) == EXIT_CONFIG

    def test_invalid_config(self, tmp_path):
        path = write_config(tmp_path, base=BASE.replace("p: 2.0", "p: 3.0"))
        assert main(["analyze", "--config", str(path)]) == EXIT_CONFIG

    def test_malformed_config_file(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("dims: [")
        assert main(["analyze", "--config", str(path)]) == EXIT_CONFIG

    def test_invalid_environment_setting(self, tmp_path, monkeypatch):
        monkeypatch.setenv("RADIAL_EMBED_SEED", "-1")
        path = write_config(tmp_path)
        assert main(["analyze", "--config", str(path)]) == EXIT_CONFIG

    def test_unexpected_exception_is_an_error_exit(self, tmp_path, monkeypatch):
        def broken(*args):
            raise RuntimeError("boom")

        monkeypatch.setitem(COMMANDS, "analyze", broken)
        path = write_config(tmp_path)
        assert main(["analyze", "--config", str(path)]) == EXIT_ERROR

    def test_analyze(self, tmp_path, capsys):
        path = write_config(tmp_path)
        assert main(["analyze", "--config", str(path), "--out", str(tmp_path / "out")]) == EXIT_OK

        payload = json.loads(capsys.readouterr().out)
        assert payload["dims"] == {"N": 3, "p": 2.0}
        assert payload["q1"]["upper"] == pytest.approx(6.0)
        assert payload["q2"] == {"lower": pytest.approx(6.0), "upper": None, "empty": False}
        assert payload["single_space"]["empty"] is True
        assert [t["criterion"] for t in payload["theorems"]] == ["THM0", "THM1"]
        assert json.loads((tmp_path / "out" / "verdict.json").read_text()) == payload

    def test_strict_hypothesis_failure(self, tmp_path):
        extra = """
        analysis:
          strict: true
          zero:
            alpha0: -3.0
          infinity:
            alphaInf: 0.0
        """
        path = write_config(tmp_path, extra)
        assert main(["analyze", "--config", str(path)]) == EXIT_HYPOTHESIS

    def test_non_strict_reports_no_conclusion(self, tmp_path, capsys):
        extra = """
        analysis:
          zero:
            alpha0: -3.0
          infinity:
            alphaInf: 0.0
        """
        path = write_config(tmp_path, extra)
        assert main(["analyze", "--config", str(path)]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["q1"] is None
        assert payload["warnings"]

    def test_region(self, tmp_path, capsys):
        extra = """
        analysis:
          region:
            beta: 0.0
            gamma: 2.0
            n_samples: 11
        """
        path = write_config(tmp_path, extra)
        out = tmp_path / "region"
        assert main(["region", "--config", str(path), "--out", str(out)]) == EXIT_OK

        assert "Saved:" in capsys.readouterr().out
        lines = (out / "region.csv").read_text().splitlines()
        assert lines[0] == "alpha,q_lower,q_upper"
        metadata = json.loads((out / "region.json").read_text())
        assert metadata["case"] == "BelowN"
        assert metadata["samples"] + len(metadata["dropped_alphas"]) == 11

    def test_region_needs_request(self, tmp_path):
        path = write_config(tmp_path)
        assert main(["region", "--config", str(path), "--out", str(tmp_path)]) == EXIT_CONFIG

    def test_witness(self, tmp_path, capsys):
        extra = """
        analysis:
          witness:
            alpha: 0.0
            q: 10.0
            beta: 0.0
            gamma: 3.0
        """
        path = write_config(tmp_path, extra)
        assert main(["witness", "--config", str(path)]) == EXIT_OK

        payload = json.loads(capsys.readouterr().out)
        assert payload["case"] == "AtN"
        assert payload["point"] == {"alpha": 0.0, "q": 10.0}
        assert payload["member"] == (payload["witness"] is not None)
        assert payload["validated"] == payload["member"]

    def test_witness_rejects_gamma_below_p(self, tmp_path):
        extra = """
        analysis:
          witness:
            alpha: 0.0
            q: 10.0
            beta: 0.0
            gamma: 1.0
        """
        path = write_config(tmp_path, extra)
        assert main(["witness", "--config", str(path)]) == EXIT_CONFIG


class TestWitnessRun:
    """Test the witness computation directly"""

    def test_interval_contains_witness(self):
        config = parse_config(
            BASE + "analysis:\n  witness:\n    alpha: 0.0\n    q: 10.0\n    beta: 0.0\n    gamma: 3.0\n"
        )
        result = run_witness(config)
        if result["witness"] is not None:
            interval = result["interval"]
            assert interval["lower"] <= result["witness"]["xi"] <= interval["upper"]


class TestVerify:
    """Test the verification suite at threshold exponents and small sample sizes"""

    EXTRA = """
    verify:
      q_values: [6.0]
      nodes_per_decade: 32
      n_random: 5
      equivalence_samples: 200
      seed: 3
    """

    def test_threshold_decays_are_refused(self, tmp_path, capsys):
        path = write_config(tmp_path, self.EXTRA)
        out = tmp_path / "out"
        assert main(["verify", "--config", str(path), "--out", str(out)]) == EXIT_OK

        payload = json.loads(capsys.readouterr().out)
        assert payload["seed"] == 3
        assert payload["nodes_per_decade"] == 32
        assert payload["counts"]["refused"] == 2
        assert payload["counts"]["failed"] == 0
        assert payload["counts"]["error"] == 0

        refused = [e for e in payload["experiments"] if e["status"] == "refused"]
        assert [e["name"] for e in refused] == ["decay q=6 zero", "decay q=6 infinity"]
        assert all(e["details"]["reason"] == "refused: threshold exponent" for e in refused)
        assert (out / "verify.json").exists()

    def test_sharpness_runs_at_q_star_without_lower_bound(self, tmp_path, capsys):
        path = write_config(tmp_path, self.EXTRA)
        main(["verify", "--config", str(path)])
        entries = json.loads(capsys.readouterr().out)["experiments"]
        sharpness = next(e for e in entries if e["name"] == "sharpness at threshold")
        assert sharpness["status"] == "reported"
        assert sharpness["details"]["threshold"] == "q*"
        assert sharpness["details"]["q"] == pytest.approx(6.0)

    def test_five_dimensions_on_coarse_grid(self, tmp_path, capsys):
        """Sparse bumps and the canonical sequences stay usable away from N = 3"""
        base = BASE.replace("N: 3", "N: 5")
        extra = """
        verify:
          q_values: [3.0]
          nodes_per_decade: 48
          n_random: 10
          equivalence_samples: 200
          seed: 0
        """
        path = write_config(tmp_path, extra, base=base)
        main(["verify", "--config", str(path)])
        payload = json.loads(capsys.readouterr().out)
        entries = {e["name"]: e for e in payload["experiments"]}
        assert payload["counts"]["error"] == 0
        assert entries["annulus bound"]["status"] == "passed"
        assert entries["sum space"]["status"] == "passed"
        vanishing = entries["sum space"]["details"]["vanishing"]
        assert all(case["holds"] == case["expected"] for case in vanishing.values())

    def test_cli_seed_wins(self, tmp_path, capsys):
        path = write_config(tmp_path, self.EXTRA)
        assert main(["verify", "--config", str(path), "--seed", "11"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["seed"] == 11

    def test_experiment_order_is_fixed(self, tmp_path, capsys):
        path = write_config(tmp_path, self.EXTRA)
        main(["verify", "--config", str(path)])
        names = [e["name"] for e in json.loads(capsys.readouterr().out)["experiments"]]
        assert names[2:] == [
            "sharpness at threshold",
            "pointwise constants",
            "annulus bound",
            "sum space",
            "witness equivalence",
        ]


class TestCanonicalSequences:
    """Test the expected classification of the canonical sum-space sequences"""

    @pytest.mark.parametrize("N", [3, 4, 5])
    @pytest.mark.parametrize("q2", [2.5, 4.0])
    def test_classification(self, N, q2):
        sequences = canonical_sequences(LogGrid(-1, 2, 512), ProblemDims(N, 2.0), 2.0, q2)
        outcomes = [
            check_vanishing_criterion(sequence, sequences["params"], sets=sets).holds
            for _, sequence, sets, _ in sequences["cases"]
        ]
        assert outcomes == [expected for *_, expected in sequences["cases"]]
        assert outcomes == [True, True, False]

class TestRunGuarded:
    """Test how experiment exceptions become report entries"""

    @staticmethod
    def raising(error: Exception):
        def fn():
            raise error

        return fn

    @pytest.mark.parametrize(
        "error, reason",
        [
            (ThresholdExponentError("q equals q*"), "refused: threshold exponent"),
            (DomainError("annulus needs a nonzero function"), "refused: inadmissible input"),
            (HypothesisViolationError("THM0", "alpha0 > alpha*"), "refused: hypothesis not met"),
        ],
    )
    def test_inadmissible_inputs_are_refused(self, error, reason):
        entry = run_guarded("experiment", self.raising(error))
        assert entry.status == "refused"
        assert entry.details["reason"] == reason

    def test_numerical_failure_is_an_error(self):
        entry = run_guarded("experiment", self.raising(NumericalError("tail does not decay")))
        assert entry.status == "error"
        assert entry.details["reason"] == "error: numerical failure"

    def test_foreign_exception_is_an_error(self):
        entry = run_guarded("experiment", self.raising(FloatingPointError("overflow")))
        assert entry.status == "error"
        assert entry.details["reason"] == "error: unexpected FloatingPointError"
        assert entry.details["message"] == "overflow"

    def test_errors_fail_the_report(self):
        entries = [
            ExperimentEntry("a", "passed"),
            run_guarded("b", self.raising(ValueError("bad shape"))),
            run_guarded("c", self.raising(DomainError("outside"))),
        ]
        report = VerifyReport(seed=0, nodes_per_decade=32, entries=entries)
        assert not report.passed
        assert report.as_dict()["counts"] == {
            "passed": 1,
            "failed": 0,
            "refused": 1,
            "reported": 0,
            "error": 1,
        }

    def test_refusals_alone_pass_the_report(self):
        entries = [run_guarded("a", self.raising(ThresholdExponentError("q equals q*")))]
        assert VerifyReport(seed=0, nodes_per_decade=32, entries=entries).passed


class TestSharpnessThreshold:
    """Test which exponent the sharpness run uses"""

    @pytest.fixture
    def dims(self):
        return ProblemDims(N=3, p=2.0)

    @pytest.fixture
    def infinity(self):
        return InfinityDescriptor(R2=1.0, alphaInf=0.0, betaInf=0.0, LambdaInf=1.0)

    def test_q_star_without_lower_bound(self, dims, infinity):
        zero = ZeroDescriptor(R1=1.0, alpha0=0.0, beta0=0.0, Lambda0=1.0)
        verdict = compute_verdict(zero, infinity, dims)
        threshold, label = sharpness_threshold(zero, verdict, dims)
        assert label == "q*"
        assert threshold == pytest.approx(6.0)

    def test_region_upper_end_under_lower_bound(self, dims, infinity):
        zero = ZeroDescriptor(R1=1.0, alpha0=0.0, beta0=0.0, Lambda0=1.0, gamma0=3.0, lambda0=1.0)
        verdict = compute_verdict(zero, infinity, dims)
        threshold, label = sharpness_threshold(zero, verdict, dims)
        assert label == "region upper end"
        assert threshold == pytest.approx(14.0)
        assert threshold == verdict.q1.upper

    def test_unbounded_region_slice_is_refused(self, dims, infinity):
        zero = ZeroDescriptor(R1=1.0, alpha0=0.0, beta0=0.0, Lambda0=1.0, gamma0=20.0, lambda0=1.0)
        verdict = compute_verdict(zero, infinity, dims)
        assert not verdict.q1.bounded
        with pytest.raises(DomainError):
            sharpness_threshold(zero, verdict, dims)

