"""Kernel SVMs: kernels, the SMO solver, one-vs-one voting and model files."""

from eeg_emotion.classifier.kernels import gram_matrix, kernel_eval, kernel_matrix
from eeg_emotion.classifier.multiclass import (
    LABEL_PAIRS,
    MulticlassModel,
    pairwise_scores,
    predict,
    predict_many,
    tally_votes,
    train_multiclass,
)
from eeg_emotion.classifier.persistence import load_model, save_model
from eeg_emotion.classifier.smo import (
    BinaryModel,
    decision_function,
    dual_objective,
    predict_binary,
    smo_train_binary,
)

__all__ = [
    "LABEL_PAIRS",
    "BinaryModel",
    "MulticlassModel",
    "decision_function",
    "dual_objective",
    "gram_matrix",
    "kernel_eval",
    "kernel_matrix",
    "load_model",
    "pairwise_scores",
    "predict",
    "predict_binary",
    "predict_many",
    "save_model",
    "smo_train_binary",
    "tally_votes",
    "train_multiclass",
]
