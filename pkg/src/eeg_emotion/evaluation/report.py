"""Text, JSON and CSV renderings of evaluation results."""

from dataclasses import dataclass
from pathlib import Path

import pandas as pd

from eeg_emotion.classifier.multiclass import MulticlassModel
from eeg_emotion.config import FileFormat, KernelConfig
from eeg_emotion.core.writer import write_document, write_text
from eeg_emotion.evaluation.metrics import format_percent
from eeg_emotion.evaluation.protocol import EvaluationReport
from eeg_emotion.generators.templates import render_template
from eeg_emotion.models import LABELS

REPORT_TEXT = "report.txt"
REPORT_JSON = "report.json"
CONFUSION_CSV = "confusion.csv"
KERNELS_TEXT = "kernels.txt"
KERNELS_JSON = "kernels.json"
KERNELS_CSV = "kernels.csv"
CV_TEXT = "cv.txt"
CV_JSON = "cv.json"

# mean CV, best fold, test accuracy as published for the 40-subject recordings
REFERENCE_RESULTS: dict[str, tuple[float, float, float]] = {
    "rbf": (0.7049, 0.7692, 0.6484),
    "linear": (0.7282, 0.8269, 0.7500),
    "gaussian": (0.6952, 0.7500, 0.6484),
    "polynomial": (0.8554, 0.9020, 0.8203),
}

KERNEL_DISPLAY = {
    "rbf": "RBF",
    "linear": "Linear",
    "gaussian": "Gaussian",
    "polynomial": "Polynomial",
}

FILTERS = {"percent": format_percent}


@dataclass(frozen=True)
class KernelRow:
    kernel: KernelConfig
    mean_cv_accuracy: float
    best_fold_accuracy: float
    test_accuracy: float

    @classmethod
    def from_report(cls, report: EvaluationReport) -> "KernelRow":
        return cls(
            report.kernel,
            report.mean_cv_accuracy,
            report.best_fold_accuracy,
            report.test_accuracy,
        )

    def to_dict(self) -> dict:
        return {
            "kernel": self.kernel.kind,
            "parameters": self.kernel.describe(),
            "mean_cv_accuracy": self.mean_cv_accuracy,
            "best_fold_accuracy": self.best_fold_accuracy,
            "test_accuracy": self.test_accuracy,
        }


def _table_lines(headers: list[str], rows: list[list[str]]) -> list[str]:
    return pd.DataFrame(rows, columns=headers).to_string(index=False).splitlines()


def confusion_frame(report: EvaluationReport) -> pd.DataFrame:
    names = [label.name.lower() for label in LABELS]
    return pd.DataFrame(report.confusion, index=pd.Index(names, name="true"), columns=names)


def render_report_text(report: EvaluationReport) -> str:
    confusion_lines = confusion_frame(report).to_string().splitlines()
    class_rows = [
        [
            m.label.display_name,
            f"{m.precision:.2f}" + ("" if m.precision_defined else "*"),
            f"{m.recall:.2f}",
            f"{m.f1:.2f}",
            str(m.support),
        ]
        for m in report.scores.per_class
    ]
    scores = report.scores
    class_rows.append(
        [
            "macro",
            f"{scores.macro_precision:.2f}",
            f"{scores.macro_recall:.2f}",
            f"{scores.macro_f1:.2f}",
            str(report.n_test),
        ]
    )
    context = {
        "kernel": report.kernel.describe(),
        "c": f"{report.c:g}",
        "seed": report.seed,
        "n_train": report.n_train,
        "n_test": report.n_test,
        "refit": report.refit_full_train,
        "fold_accuracies": list(report.fold_accuracies),
        "best_fold": report.best_fold,
        "mean_cv_accuracy": report.mean_cv_accuracy,
        "best_fold_accuracy": report.best_fold_accuracy,
        "test_accuracy": report.test_accuracy,
        "confusion_lines": confusion_lines,
        "class_lines": _table_lines(["class", "precision", "recall", "f1", "support"], class_rows),
        "undefined_precision": [label.name.lower() for label in scores.undefined_precision],
        "unconverged": list(report.unconverged),
    }
    return render_template("report.txt.j2", context, FILTERS)


def write_report(report: EvaluationReport, out_dir: Path, provenance: dict) -> list[Path]:
    """
    Write report.txt, report.json and confusion.csv into ``out_dir``.

    Returns:
        Paths written, in that order
    """
    text_path = out_dir / REPORT_TEXT
    json_path = out_dir / REPORT_JSON
    csv_path = out_dir / CONFUSION_CSV

    write_text(text_path, render_report_text(report), provenance)
    write_document({"provenance": provenance, **report.to_dict()}, json_path, FileFormat.JSON)
    write_text(csv_path, confusion_frame(report).to_csv(lineterminator="\n"), provenance)
    return [text_path, json_path, csv_path]


def _kernel_table_headers(folds: int) -> list[str]:
    return [
        "Kernel Function",
        f"Average accuracy across {folds} folds",
        "Maximum Accuracy on the best fold",
        "Test Accuracy on Best Fold",
    ]


def render_kernel_table(
    rows: list[KernelRow], folds: int, seed: int, with_reference: bool = False
) -> str:
    """One row per kernel with mean CV, best-fold and test accuracy."""
    table = [
        [
            KERNEL_DISPLAY[row.kernel.kind],
            format_percent(row.mean_cv_accuracy),
            format_percent(row.best_fold_accuracy),
            format_percent(row.test_accuracy),
        ]
        for row in rows
    ]
    reference_lines: list[str] = []
    if with_reference:
        reference = [
            [KERNEL_DISPLAY[kind], *(format_percent(v) for v in values)]
            for kind, values in REFERENCE_RESULTS.items()
        ]
        reference_lines = _table_lines(_kernel_table_headers(10), reference)
    context = {
        "folds": folds,
        "seed": seed,
        "table_lines": _table_lines(_kernel_table_headers(folds), table),
        "reference_lines": reference_lines,
    }
    return render_template("kernel_table.txt.j2", context, FILTERS)


def write_kernel_comparison(
    rows: list[KernelRow],
    out_dir: Path,
    provenance: dict,
    folds: int,
    seed: int,
    with_reference: bool = False,
) -> list[Path]:
    """Write kernels.txt, kernels.json and kernels.csv into ``out_dir``."""
    text_path = out_dir / KERNELS_TEXT
    json_path = out_dir / KERNELS_JSON
    csv_path = out_dir / KERNELS_CSV

    write_text(text_path, render_kernel_table(rows, folds, seed, with_reference), provenance)
    document = {"provenance": provenance, "rows": [row.to_dict() for row in rows]}
    if with_reference:
        document["reference"] = [
            {"kernel": kind, "mean_cv_accuracy": m, "best_fold_accuracy": b, "test_accuracy": t}
            for kind, (m, b, t) in REFERENCE_RESULTS.items()
        ]
    write_document(document, json_path, FileFormat.JSON)
    frame = pd.DataFrame([row.to_dict() for row in rows])
    write_text(csv_path, frame.to_csv(index=False, lineterminator="\n"), provenance)
    return [text_path, json_path, csv_path]


def write_cv_report(model: MulticlassModel, out_dir: Path, provenance: dict) -> list[Path]:
    """Write cv.txt and cv.json from the protocol recorded on a trained model."""
    protocol = model.metadata["protocol"]
    context = {
        "kernel": model.kernel.describe(),
        "c": f"{model.c:g}",
        "seed": protocol["seed"],
        "n_train": protocol["n_train"],
        "n_test": protocol["n_test"],
        "fold_accuracies": protocol["fold_accuracies"],
        "fold_sizes": protocol["fold_sizes"],
        "best_fold": protocol["best_fold"],
        "mean_cv_accuracy": protocol["mean_cv_accuracy"],
        "refit": protocol["refit_full_train"],
    }
    text_path = out_dir / CV_TEXT
    json_path = out_dir / CV_JSON
    write_text(text_path, render_template("cv_report.txt.j2", context, FILTERS), provenance)
    document = {
        "provenance": provenance,
        "kernel": model.kernel.model_dump(mode="json"),
        "C": model.c,
        "cross_validation": protocol,
        "unconverged_pairs": [m.pair_name for m in model.unconverged],
    }
    write_document(document, json_path, FileFormat.JSON)
    return [text_path, json_path]
