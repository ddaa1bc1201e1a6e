"""Confusion matrix and precision/recall/F1 for the four emotion classes."""

from dataclasses import dataclass

import numpy as np
from sklearn.metrics import confusion_matrix as _sk_confusion_matrix

from eeg_emotion.errors import DimensionError
from eeg_emotion.models import LABELS, EmotionLabel


def confusion_matrix(truths, predictions) -> np.ndarray:
    """4x4 counts; rows are true labels, columns predictions, both in quadrant order."""
    truths = np.asarray([int(t) for t in truths], dtype=int)
    predictions = np.asarray([int(p) for p in predictions], dtype=int)
    if truths.shape != predictions.shape:
        raise DimensionError(f"{truths.shape[0]} truths vs {predictions.shape[0]} predictions")
    if truths.shape[0] == 0:
        raise DimensionError("need at least one prediction")
    return _sk_confusion_matrix(truths, predictions, labels=[int(label) for label in LABELS])


@dataclass(frozen=True)
class ClassMetrics:
    label: EmotionLabel
    precision: float
    recall: float
    f1: float
    support: int
    precision_defined: bool = True

    def to_dict(self) -> dict:
        return {
            "label": self.label.name.lower(),
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "support": self.support,
            "precision_defined": self.precision_defined,
        }


@dataclass(frozen=True)
class Metrics:
    """Per-class and macro-averaged scores derived from one confusion matrix."""

    per_class: tuple[ClassMetrics, ...]
    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float

    @property
    def undefined_precision(self) -> list[EmotionLabel]:
        return [m.label for m in self.per_class if not m.precision_defined]

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "macro": {
                "precision": self.macro_precision,
                "recall": self.macro_recall,
                "f1": self.macro_f1,
            },
            "per_class": [m.to_dict() for m in self.per_class],
        }


def _safe_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    return np.divide(num, den, out=np.zeros_like(num, dtype=float), where=den > 0)


def metrics(cm) -> Metrics:
    """
    Precision, recall and F1 per class plus unweighted macro means.

    A class never predicted gets precision 0 and is flagged undefined; F1 is
    0 when precision and recall are both 0.
    """
    cm = np.asarray(cm, dtype=float)
    if cm.shape != (len(LABELS), len(LABELS)):
        raise DimensionError(f"confusion matrix must be 4x4, got {cm.shape}")
    total = cm.sum()
    if total <= 0:
        raise DimensionError("confusion matrix is empty")

    tp = np.diag(cm)
    predicted = cm.sum(axis=0)
    actual = cm.sum(axis=1)
    precision = _safe_ratio(tp, predicted)
    recall = _safe_ratio(tp, actual)
    f1 = _safe_ratio(2.0 * precision * recall, precision + recall)

    per_class = tuple(
        ClassMetrics(
            label,
            float(precision[i]),
            float(recall[i]),
            float(f1[i]),
            int(actual[i]),
            precision_defined=bool(predicted[i] > 0),
        )
        for i, label in enumerate(LABELS)
    )
    return Metrics(
        per_class,
        accuracy=float(np.trace(cm) / total),
        macro_precision=float(precision.mean()),
        macro_recall=float(recall.mean()),
        macro_f1=float(f1.mean()),
    )


def accuracy(truths, predictions) -> float:
    """trace / total of the confusion matrix."""
    cm = confusion_matrix(truths, predictions)
    return float(np.trace(cm) / cm.sum())


def format_percent(fraction: float) -> str:
    """0.8203125 -> '82.03%'."""
    return f"{100.0 * fraction:.2f}%"
