"""Splits, cross-validation protocol, metrics and reports."""

from eeg_emotion.evaluation.metrics import (
    ClassMetrics,
    Metrics,
    accuracy,
    confusion_matrix,
    format_percent,
    metrics,
)
from eeg_emotion.evaluation.protocol import (
    CrossValidation,
    EvaluationReport,
    cross_validate,
    evaluate_model,
    run_evaluation,
    train_with_cv,
)
from eeg_emotion.evaluation.splits import (
    kfold_indices,
    kfold_partition,
    stratified_split,
    stratified_split_indices,
)

__all__ = [
    "ClassMetrics",
    "CrossValidation",
    "EvaluationReport",
    "Metrics",
    "accuracy",
    "confusion_matrix",
    "cross_validate",
    "evaluate_model",
    "format_percent",
    "kfold_indices",
    "kfold_partition",
    "metrics",
    "run_evaluation",
    "stratified_split",
    "stratified_split_indices",
    "train_with_cv",
]
