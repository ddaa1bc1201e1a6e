"""Tests for the main CLI module."""

import json

import pytest
from typer.testing import CliRunner

from eeg_emotion.config import PipelineConfig
from eeg_emotion.errors import ConfigError, MissingInputError
from eeg_emotion.main import app, require, resolve_config

runner = CliRunner()

SMALL_SYNTH = ["--subjects", "2", "--videos-per-quadrant", "2", "--duration", "4"]


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """Run each command from an empty directory so no stray config file is picked up."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def features_dir(workdir):
    """A synthetic dataset run through synth, ingest and features."""
    out = workdir / "out"
    steps = [
        ["synth", "--out", str(workdir / "data"), *SMALL_SYNTH],
        ["ingest", "--manifest", str(workdir / "data" / "manifest.json"), "--out", str(out)],
        ["features", "--out", str(out)],
    ]
    for args in steps:
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
    return out


class TestResolveConfig:
    """Test config resolution for commands."""

    def test_defaults_without_file(self, workdir):
        """Test that no config file gives the defaults."""
        assert resolve_config(None, {}) == PipelineConfig()

    def test_flag_beats_file(self, workdir):
        """Test that a set flag overrides the config file and unset flags do not."""
        config_file = workdir / "custom.yaml"
        config_file.write_text("folds: 5\nseed: 3\n")

        config = resolve_config(config_file, {"folds": 7, "seed": None})

        assert config.folds == 7
        assert config.seed == 3

    def test_config_in_working_directory(self, workdir):
        """Test that .eeg-emotion.yaml in the working directory is read."""
        (workdir / ".eeg-emotion.yaml").write_text("kernel:\n  kind: linear\n")

        assert resolve_config(None, {}).kernel.kind == "linear"

    def test_missing_explicit_file(self, workdir):
        """Test that an explicit config path must exist."""
        with pytest.raises(MissingInputError):
            resolve_config(workdir / "absent.yaml", {})

    def test_invalid_override(self, workdir):
        """Test that an unknown kernel is a config error."""
        with pytest.raises(ConfigError, match="kernel"):
            resolve_config(None, {"kernel.kind": "cubic"})


def test_require_names_what_is_missing(tmp_path):
    """The error names the missing input and its path."""
    with pytest.raises(MissingInputError, match="model not found"):
        require(tmp_path / "model.json", "model")


class TestCommands:
    """Test the commands end to end on a small synthetic dataset."""

    def test_synth_writes_manifest(self, workdir):
        """Test that synth writes sixteen recordings and a manifest."""
        result = runner.invoke(app, ["synth", "--out", str(workdir / "data"), *SMALL_SYNTH])

        assert result.exit_code == 0, result.output
        manifest = json.loads((workdir / "data" / "manifest.json").read_text())
        assert len(manifest["entries"]) == 16
        assert manifest["provenance"]["source"] == "synthetic"

    def test_features_file(self, features_dir):
        """Test that the feature matrix has a row per trial."""
        lines = (features_dir / "features.csv").read_text().splitlines()

        assert lines[0].startswith("# provenance: ")
        assert len([line for line in lines if not line.startswith("#")]) == 17

    def test_train_then_evaluate(self, features_dir):
        """Test that train saves a model which evaluate scores on the test part."""
        train = runner.invoke(
            app, ["train", "--out", str(features_dir), "--folds", "3", "--kernel", "polynomial"]
        )
        assert train.exit_code == 0, train.output
        assert (features_dir / "model.json").exists()
        assert (features_dir / "cv.txt").exists()

        evaluate = runner.invoke(app, ["evaluate", "--out", str(features_dir)])
        assert evaluate.exit_code == 0, evaluate.output
        report = json.loads((features_dir / "report.json").read_text())
        assert report["n_test"] == 4
        assert report["provenance"]["command"] == "evaluate"
        assert len(report["cross_validation"]["fold_accuracies"]) == 3
        assert "test accuracy" in evaluate.output

    def test_report_compares_four_kernels(self, features_dir):
        """Test that report writes one row per kernel family."""
        result = runner.invoke(
            app, ["report", "--out", str(features_dir), "--folds", "3", "--with-reference"]
        )

        assert result.exit_code == 0, result.output
        document = json.loads((features_dir / "kernels.json").read_text())
        assert [row["kernel"] for row in document["rows"]] == [
            "rbf",
            "linear",
            "gaussian",
            "polynomial",
        ]
        assert len(document["reference"]) == 4
        assert "Average accuracy across 3 folds" in (features_dir / "kernels.txt").read_text()

    def test_verbose_prints_stages(self, features_dir):
        """Test that --verbose lists every fold accuracy."""
        result = runner.invoke(
            app, ["train", "--out", str(features_dir), "--folds", "3", "--verbose"]
        )

        assert result.exit_code == 0, result.output
        assert "fold 0:" in result.output
        assert "fold 2:" in result.output

    def test_verbose_report_prints_folds(self, features_dir):
        """Test that report --verbose lists fold accuracies under each kernel."""
        result = runner.invoke(
            app, ["report", "--out", str(features_dir), "--folds", "3", "--verbose"]
        )

        assert result.exit_code == 0, result.output
        assert "kernel gaussian" in result.output
        assert result.output.count("→ fold 2:") == 4


class TestErrors:
    """Test error reporting on the command line."""

    def test_missing_manifest(self, workdir):
        """Test that a missing manifest exits 1 with a coded message."""
        result = runner.invoke(app, ["ingest", "--manifest", str(workdir / "nope.json")])

        assert result.exit_code == 1
        assert "error[missing-input]" in result.output
        assert "manifest not found" in result.output

    def test_missing_model(self, workdir):
        """Test that evaluate without a model names the missing file."""
        result = runner.invoke(app, ["evaluate", "--out", str(workdir)])

        assert result.exit_code == 1
        assert "error[missing-input]: model not found" in result.output

    def test_bad_config_file(self, workdir):
        """Test that an invalid config value is reported as a config error."""
        config_file = workdir / "bad.yaml"
        config_file.write_text("folds: 1\n")

        result = runner.invoke(app, ["train", "--config", str(config_file)])

        assert result.exit_code == 1
        assert "error[config]: folds" in result.output

    def test_too_many_folds(self, features_dir):
        """Test that more folds than training samples is a range error."""
        result = runner.invoke(app, ["train", "--out", str(features_dir), "--folds", "13"])

        assert result.exit_code == 1
        assert "error[range]" in result.output

    def test_negative_seed_synth(self, workdir):
        """Test that a negative synth seed is a config error, not a crash."""
        result = runner.invoke(
            app, ["synth", "--out", str(workdir / "data"), *SMALL_SYNTH, "--seed", "-1"]
        )

        assert result.exit_code == 1
        assert "error[config]: synth.seed" in result.output
        assert not (workdir / "data" / "manifest.json").exists()

    def test_negative_seed_train(self, features_dir):
        """Test that a negative training seed is rejected before splitting."""
        result = runner.invoke(app, ["train", "--out", str(features_dir), "--seed", "-1"])

        assert result.exit_code == 1
        assert "error[config]: seed" in result.output

    def test_evaluate_other_features(self, features_dir, workdir):
        """Test that evaluate refuses a feature file the model was not trained on."""
        train = runner.invoke(app, ["train", "--out", str(features_dir), "--folds", "3"])
        assert train.exit_code == 0, train.output
        other = workdir / "other"
        for args in (
            ["synth", "--out", str(workdir / "data2"), *SMALL_SYNTH, "--subjects", "3"],
            ["ingest", "--manifest", str(workdir / "data2" / "manifest.json"), "--out", str(other)],
            ["features", "--out", str(other)],
        ):
            assert runner.invoke(app, args).exit_code == 0

        result = runner.invoke(
            app,
            ["evaluate", "--out", str(features_dir), "--features", str(other / "features.csv")],
        )

        assert result.exit_code == 1
        assert "error[training]: feature set does not match" in result.output

    def test_evaluate_takes_no_config(self, workdir):
        """Test that evaluate has no --config option; the model carries its settings."""
        result = runner.invoke(app, ["evaluate", "--config", str(workdir / "any.yaml")])

        assert result.exit_code == 2
        assert "--config" in result.output
