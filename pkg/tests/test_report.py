"""Tests for report rendering and the written result files."""

import json

import numpy as np
import pytest
from jinja2 import UndefinedError

from eeg_emotion.classifier import train_multiclass
from eeg_emotion.config import KernelConfig, PipelineConfig
from eeg_emotion.core.writer import provenance_line
from eeg_emotion.evaluation import EvaluationReport, metrics, train_with_cv
from eeg_emotion.evaluation.report import (
    CONFUSION_CSV,
    FILTERS,
    KERNEL_DISPLAY,
    REPORT_JSON,
    REPORT_TEXT,
    KernelRow,
    render_kernel_table,
    render_report_text,
    write_cv_report,
    write_kernel_comparison,
    write_report,
)
from eeg_emotion.generators.templates import render_template

PUBLISHED_CM = np.array([[27, 2, 2, 1], [2, 26, 2, 2], [2, 2, 26, 2], [2, 2, 2, 26]])
PROVENANCE = {"command": "evaluate", "seed": 0}


@pytest.fixture
def report() -> EvaluationReport:
    scores = metrics(PUBLISHED_CM)
    return EvaluationReport(
        fold_accuracies=(0.80, 0.90, 0.85),
        best_fold=1,
        test_accuracy=scores.accuracy,
        confusion=PUBLISHED_CM,
        scores=scores,
        kernel=KernelConfig(kind="polynomial", degree=2),
        c=1.0,
        seed=0,
        n_train=512,
        n_test=128,
    )


def _rows() -> list[KernelRow]:
    return [
        KernelRow(KernelConfig(kind=kind), 0.7, 0.8, 0.75)
        for kind in ("rbf", "linear", "gaussian", "polynomial")
    ]


class TestReportText:
    """Test the evaluation report."""

    def test_accuracy_and_folds(self, report):
        """Test that test accuracy and the best fold appear formatted."""
        text = render_report_text(report)

        assert "accuracy 82.03%" in text
        assert "fold 1   90.00%  <- best" in text
        assert "mean     85.00%" in text
        assert "train/test: 512/128" in text

    def test_confusion_rows(self, report):
        """Test that the confusion matrix lists classes in quadrant order."""
        text = render_report_text(report)

        body = text[text.index("Confusion matrix") :]
        order = [body.index(name) for name in ("happy", "angry", "sad", "relaxed")]
        assert order == sorted(order)

    def test_undefined_precision_note(self, report):
        """Test that a class never predicted is marked."""
        cm = np.array([[8, 0, 0, 0], [0, 8, 0, 0], [0, 0, 8, 0], [0, 0, 8, 0]])
        scores = metrics(cm)
        never = EvaluationReport(
            **{**report.__dict__, "confusion": cm, "scores": scores, "test_accuracy": 0.75}
        )

        text = render_report_text(never)

        assert "precision undefined" in text
        assert "relaxed" in text.splitlines()[-1]

    def test_written_files(self, tmp_path, report):
        """Test the three report files and their provenance."""
        paths = write_report(report, tmp_path, PROVENANCE)

        assert [p.name for p in paths] == [REPORT_TEXT, REPORT_JSON, CONFUSION_CSV]
        first_line = (tmp_path / REPORT_TEXT).read_text().splitlines()[0]
        assert first_line == provenance_line(PROVENANCE)
        document = json.loads((tmp_path / REPORT_JSON).read_text())
        assert document["provenance"] == PROVENANCE
        assert document["test"]["confusion_matrix"] == PUBLISHED_CM.tolist()
        csv_lines = (tmp_path / CONFUSION_CSV).read_text().splitlines()
        assert csv_lines[1] == "true,happy,angry,sad,relaxed"
        assert csv_lines[2] == "happy,27,2,2,1"


class TestKernelTable:
    """Test the kernel comparison table."""

    def test_headers_and_rows(self):
        """Test that the header names the fold count and each kernel gets a row."""
        lines = render_kernel_table(_rows(), folds=10, seed=0).splitlines()

        assert "Average accuracy across 10 folds" in lines[2]
        assert "Test Accuracy on Best Fold" in lines[2]
        body = [line for line in lines[3:] if line]
        assert [line.split()[0] for line in body] == list(KERNEL_DISPLAY.values())
        assert body[0].split()[1:] == ["70.00%", "80.00%", "75.00%"]

    def test_columns_aligned(self):
        """Test that every table line has the same width and percentages line up."""
        lines = render_kernel_table(_rows(), folds=10, seed=0).splitlines()
        table = [line for line in lines[2:] if line]

        assert len(table) == 5
        assert len({len(line) for line in table}) == 1
        assert len({line.index("70.00%") for line in table[1:]}) == 1

    def test_reference_block(self):
        """Test that published values are shown only on request and labelled."""
        plain = render_kernel_table(_rows(), folds=5, seed=0)
        with_reference = render_kernel_table(_rows(), folds=5, seed=0, with_reference=True)

        assert "Published reference values" not in plain
        assert "Published reference values (not measured here)" in with_reference
        assert "82.03%" in with_reference
        assert "Average accuracy across 5 folds" in with_reference

    def test_written_files(self, tmp_path):
        """Test that text, JSON and CSV outputs carry the rows."""
        paths = write_kernel_comparison(_rows(), tmp_path, PROVENANCE, folds=10, seed=0)

        assert [p.suffix for p in paths] == [".txt", ".json", ".csv"]
        document = json.loads(paths[1].read_text())
        assert [row["kernel"] for row in document["rows"]] == list(KERNEL_DISPLAY)
        assert "reference" not in document
        csv_lines = paths[2].read_text().splitlines()
        assert csv_lines[0] == provenance_line(PROVENANCE)
        assert csv_lines[1].startswith("kernel,parameters,mean_cv_accuracy")


class TestCVReport:
    """Test the report written by the train command."""

    def test_written_files(self, tmp_path, clusters):
        """Test that fold accuracies and sizes are listed."""
        config = PipelineConfig(kernel=KernelConfig(kind="linear"), folds=4)
        model, _ = train_with_cv(clusters, config)

        text_path, json_path = write_cv_report(model, tmp_path, PROVENANCE)

        text = text_path.read_text()
        assert "(n=8)" in text
        assert "model of fold 0" in text
        document = json.loads(json_path.read_text())
        assert document["cross_validation"]["fold_sizes"] == [8, 8, 8, 8]

    def test_requires_protocol(self, tmp_path, clusters):
        """Test that a model trained without cross-validation has no report."""
        model = train_multiclass(clusters, KernelConfig(kind="linear"))

        with pytest.raises(KeyError):
            write_cv_report(model, tmp_path, PROVENANCE)


def test_template_needs_every_variable():
    """Rendering with a missing context variable fails loudly."""
    with pytest.raises(UndefinedError):
        render_template("cv_report.txt.j2", {"kernel": "linear"}, FILTERS)
