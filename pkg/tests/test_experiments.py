"""Experiment orchestration: configs, reports, emission, CLI, isolation."""

import ast
import json
import re
from pathlib import Path

import pytest

from slelab.cli import main as cli_main
from slelab.errors import ConfigError
from slelab.experiments import ExperimentConfig, emit, run

GMC_SMALL = {
    "experiment": "gmc-kpz",
    "gamma": 1.0,
    "cantor": {"b": 3, "K": [0, 2], "depth": 9},
    "replicas": 3,
    "seed": 11,
    "levels": 12,
}


class TestConfig:
    def test_unknown_experiment(self):
        with pytest.raises(ConfigError, match="experiment"):
            ExperimentConfig(experiment="mystery")

    def test_missing_fields_named(self):
        with pytest.raises(ConfigError, match="kappa"):
            ExperimentConfig(experiment="zip-cantor")
        with pytest.raises(ConfigError, match="cantor"):
            ExperimentConfig(experiment="gmc-kpz", gamma=1.0)
        with pytest.raises(ConfigError, match="sampler"):
            ExperimentConfig(experiment="subordinator", alpha=0.5)

    def test_bad_sampler(self):
        from slelab.cantor import middle_thirds

        with pytest.raises(ConfigError, match="sampler"):
            ExperimentConfig(
                experiment="subordinator",
                alpha=0.5,
                sampler="magic",
                cantor=middle_thirds(),
            )

    def test_unknown_json_field(self):
        with pytest.raises(ConfigError, match="unknown field"):
            ExperimentConfig.from_json('{"experiment": "formula-identities", "nope": 1}')

    def test_bad_json(self):
        with pytest.raises(ConfigError, match="invalid JSON"):
            ExperimentConfig.from_json("{")

    def test_default_tolerances(self):
        cfg = ExperimentConfig(experiment="formula-identities")
        assert cfg.tolerance == 1e-10
        cfg = ExperimentConfig(experiment="trace-dim", kappa=2.0, n_steps=100)
        assert cfg.tolerance == 0.10

    def test_from_file(self, tmp_path):
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps(GMC_SMALL))
        cfg = ExperimentConfig.from_file(p)
        assert cfg.gamma == 1.0
        assert cfg.cantor.base == 3


class TestRun:
    def test_formula_identities_pass(self):
        report = run(ExperimentConfig(experiment="formula-identities"))
        assert report.passed
        assert report.estimates and max(report.estimates) < 1e-10
        assert set(report.extras["checks"]) == {"duality", "composition", "special-values"}

    def test_replica_seeds_offset(self):
        # replica r must use seed + r: a 1-replica run at seed+1 matches
        # the second estimate of a 2-replica run at seed
        cfg2 = ExperimentConfig.from_json(json.dumps({**GMC_SMALL, "replicas": 2}))
        cfg1 = ExperimentConfig.from_json(
            json.dumps({**GMC_SMALL, "replicas": 1, "seed": GMC_SMALL["seed"] + 1})
        )
        assert run(cfg2).estimates[1] == run(cfg1).estimates[0]

    def test_deterministic_report_bytes(self):
        cfg = ExperimentConfig.from_json(json.dumps(GMC_SMALL))
        a = run(cfg).to_json(include_wall_clock=False)
        b = run(cfg).to_json(include_wall_clock=False)
        assert a == b

    def test_workers_do_not_change_estimates(self):
        base = run(ExperimentConfig.from_json(json.dumps(GMC_SMALL)))
        par = run(ExperimentConfig.from_json(json.dumps({**GMC_SMALL, "workers": 2})))
        assert base.estimates == par.estimates

    def test_prediction_present_and_independent(self):
        report = run(ExperimentConfig.from_json(json.dumps(GMC_SMALL)))
        from slelab.formulas import psi_inverse
        import math

        assert report.prediction == pytest.approx(
            psi_inverse(1.0, math.log(2) / math.log(3)), abs=1e-14
        )


class TestPredictionIsolation:
    def test_predictions_module_imports_no_estimators(self):
        # structural separation: the prediction layer must not touch the
        # sampling or estimation modules
        import slelab.predictions as predictions

        tree = ast.parse(Path(predictions.__file__).read_text())
        banned = {"boxcount", "loewner", "chaos", "stochastic", "_kernels", "experiments"}
        for node in ast.walk(tree):
            names = []
            if isinstance(node, ast.Import):
                names = [alias.name for alias in node.names]
            elif isinstance(node, ast.ImportFrom) and node.module:
                names = [node.module]
            for name in names:
                assert not (set(name.split(".")) & banned), f"forbidden import {name}"


class TestEmit:
    @pytest.fixture(scope="class")
    def report(self):
        return run(ExperimentConfig.from_json(json.dumps(GMC_SMALL)))

    def test_json_roundtrip(self, report, tmp_path):
        (path,) = emit(report, tmp_path, ("json",))
        obj = json.loads(path.read_text())
        assert obj["mean"] == report.mean
        assert obj["config"]["experiment"] == "gmc-kpz"
        assert len(obj["estimates"]) == report.config["replicas"]

    def test_csv_rows(self, report, tmp_path):
        (path,) = emit(report, tmp_path, ("csv",))
        lines = path.read_text().strip().splitlines()
        assert len(lines) == report.config["replicas"] + 1

    def test_svg_annotation_matches_slope(self, report, tmp_path):
        (path,) = emit(report, tmp_path, ("svg",))
        body = path.read_text()
        match = re.search(r"slope=(-?\d+\.\d{3})", body)
        assert match is not None
        assert float(match.group(1)) == pytest.approx(report.mean, abs=5e-4)
        assert "prediction=" in body

    def test_unknown_format(self, report, tmp_path):
        with pytest.raises(ConfigError, match="format"):
            emit(report, tmp_path, ("pdf",))


class TestCli:
    def test_check_formulas_exit_zero(self, capsys):
        assert cli_main(["check-formulas", "--grid", "200"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 3

    def test_run_roundtrip(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(GMC_SMALL))
        code = cli_main(
            ["run", str(cfg), "--out", str(tmp_path / "out"), "--format", "json,csv,svg"]
        )
        assert code == 0
        for ext in ("json", "csv", "svg"):
            assert (tmp_path / "out" / f"gmc-kpz.{ext}").exists()
        assert "PASS" in capsys.readouterr().out

    def test_bad_config_exit_two(self, tmp_path, capsys):
        cfg = tmp_path / "bad.json"
        cfg.write_text('{"experiment": "zip-cantor"}')
        assert cli_main(["run", str(cfg)]) == 2
        assert "kappa" in capsys.readouterr().err
