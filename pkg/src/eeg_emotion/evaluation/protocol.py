"""
Hold-out plus k-fold protocol.

The labelled feature set is split 80/20 (stratified). Cross-validation runs on
the training part only; the model of the fold with the best validation
accuracy is the one scored on the test part, unless ``refit_full_train``
asks for a model trained on the whole training part instead.
"""

import hashlib
import json
from dataclasses import dataclass, replace

import numpy as np
from rich.console import Console

from eeg_emotion.classifier.multiclass import MulticlassModel, predict_many, train_multiclass
from eeg_emotion.config import KernelConfig, PipelineConfig, SMOConfig
from eeg_emotion.errors import EmotionPipelineError, TrainingError
from eeg_emotion.evaluation.metrics import Metrics, confusion_matrix, format_percent, metrics
from eeg_emotion.evaluation.splits import kfold_partition, stratified_split
from eeg_emotion.models import Dataset


def fold_seed(seed: int, fold: int) -> int:
    return int(np.random.SeedSequence([seed, fold]).generate_state(1)[0])


def keys_digest(dataset: Dataset) -> str:
    """SHA-256 over the sorted (subject_id, video_id) keys of a dataset."""
    return hashlib.sha256(json.dumps(sorted(dataset.keys)).encode()).hexdigest()


@dataclass(frozen=True)
class CrossValidation:
    fold_accuracies: tuple[float, ...]
    fold_sizes: tuple[int, ...]
    best_fold: int
    model: MulticlassModel

    @property
    def mean_accuracy(self) -> float:
        return float(np.mean(self.fold_accuracies))

    @property
    def best_accuracy(self) -> float:
        return self.fold_accuracies[self.best_fold]


def cross_validate(
    train: Dataset,
    kernel: KernelConfig,
    smo: SMOConfig | None = None,
    k: int = 10,
    seed: int = 0,
    console: Console | None = None,
) -> CrossValidation:
    """
    Train on k-1 folds and validate on the held one, for every fold.

    Returns:
        Fold accuracies in fold order, the best fold (ties go to the lowest
        index) and the model trained for that fold

    Raises:
        TrainingError: Carrying the index of the fold that failed
    """
    folds = kfold_partition(train, k, seed)
    accuracies: list[float] = []
    models: list[MulticlassModel] = []

    for index, held in enumerate(folds):
        rest = np.sort(np.concatenate([f for i, f in enumerate(folds) if i != index]))
        try:
            model = train_multiclass(train.subset(rest), kernel, smo, seed=fold_seed(seed, index))
            validation = train.subset(held)
            predictions = predict_many(model, validation.feature_matrix())
        except EmotionPipelineError as e:
            raise TrainingError(str(e), fold=index) from e
        correct = sum(int(p) == int(t) for p, t in zip(predictions, validation.labels, strict=True))
        accuracies.append(correct / len(validation))
        models.append(model)
        if console:
            console.print(
                f"  [dim]→ fold {index}: {format_percent(accuracies[-1])} "
                f"({correct}/{len(validation)})[/dim]"
            )
        for binary in model.unconverged if console else ():
            console.print(
                f"  [yellow]![/yellow] fold {index}: pair {binary.pair_name} stopped "
                f"before convergence (max violation {binary.max_violation:.3g})"
            )

    best = int(np.argmax(accuracies))
    return CrossValidation(tuple(accuracies), tuple(len(f) for f in folds), best, models[best])


def train_with_cv(
    dataset: Dataset, config: PipelineConfig, console: Console | None = None
) -> tuple[MulticlassModel, CrossValidation]:
    """
    Split, cross-validate and pick the model to keep.

    The returned model's metadata records the protocol (split, seed, folds)
    so the test part can be recovered from the same feature set later.
    """
    train, test = stratified_split(dataset, config.split, config.seed)
    cv = cross_validate(train, config.kernel, config.smo, config.folds, config.seed, console)
    model = cv.model
    if config.refit_full_train:
        if console:
            console.print("  [dim]→ refitting on the full training part[/dim]")
        model = train_multiclass(train, config.kernel, config.smo, seed=config.seed)

    protocol = {
        "split": config.split,
        "seed": config.seed,
        "folds": config.folds,
        "refit_full_train": config.refit_full_train,
        "n_train": len(train),
        "n_test": len(test),
        "test_keys_sha256": keys_digest(test),
        "fold_sizes": list(cv.fold_sizes),
        "fold_accuracies": list(cv.fold_accuracies),
        "mean_cv_accuracy": cv.mean_accuracy,
        "best_fold": cv.best_fold,
        "best_fold_accuracy": cv.best_accuracy,
    }
    return replace(model, metadata={**model.metadata, "protocol": protocol}), cv


@dataclass(frozen=True)
class EvaluationReport:
    """Cross-validation summary plus test-set scores of the kept model."""

    fold_accuracies: tuple[float, ...]
    best_fold: int
    test_accuracy: float
    confusion: np.ndarray
    scores: Metrics
    kernel: KernelConfig
    c: float
    seed: int
    n_train: int
    n_test: int
    refit_full_train: bool = False
    unconverged: tuple[str, ...] = ()

    @property
    def mean_cv_accuracy(self) -> float:
        return float(np.mean(self.fold_accuracies))

    @property
    def best_fold_accuracy(self) -> float:
        return self.fold_accuracies[self.best_fold]

    def to_dict(self) -> dict:
        return {
            "kernel": self.kernel.model_dump(mode="json"),
            "C": self.c,
            "seed": self.seed,
            "refit_full_train": self.refit_full_train,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "cross_validation": {
                "fold_accuracies": list(self.fold_accuracies),
                "mean_accuracy": self.mean_cv_accuracy,
                "best_fold": self.best_fold,
                "best_fold_accuracy": self.best_fold_accuracy,
            },
            "test": {
                "accuracy": self.test_accuracy,
                "confusion_matrix": self.confusion.tolist(),
                **self.scores.to_dict(),
                "undefined_precision": [m.name.lower() for m in self.scores.undefined_precision],
            },
            "unconverged_pairs": list(self.unconverged),
        }


def evaluate_model(model: MulticlassModel, dataset: Dataset) -> EvaluationReport:
    """
    Score a model trained by train_with_cv on the test part of ``dataset``.

    Raises:
        TrainingError: The model carries no protocol metadata, or ``dataset``
            is not the feature set the model was trained on
    """
    protocol = model.metadata.get("protocol")
    if not protocol:
        raise TrainingError("model has no protocol metadata; train it with cross-validation")
    expected = protocol["n_train"] + protocol["n_test"]
    if len(dataset) != expected:
        raise TrainingError(
            "feature set does not match the one the model was trained on: "
            f"{len(dataset)} trials, expected {expected}"
        )
    _, test = stratified_split(dataset, protocol["split"], protocol["seed"])
    if keys_digest(test) != protocol["test_keys_sha256"]:
        raise TrainingError(
            "feature set does not match the one the model was trained on: "
            "the held-out trials differ"
        )
    predictions = predict_many(model, test.feature_matrix())
    cm = confusion_matrix(test.labels, predictions)
    scores = metrics(cm)
    return EvaluationReport(
        fold_accuracies=tuple(protocol["fold_accuracies"]),
        best_fold=int(protocol["best_fold"]),
        test_accuracy=scores.accuracy,
        confusion=cm,
        scores=scores,
        kernel=model.kernel,
        c=model.c,
        seed=int(protocol["seed"]),
        n_train=int(protocol["n_train"]),
        n_test=len(test),
        refit_full_train=bool(protocol.get("refit_full_train", False)),
        unconverged=tuple(m.pair_name for m in model.unconverged),
    )


def run_evaluation(
    dataset: Dataset, config: PipelineConfig, console: Console | None = None
) -> tuple[MulticlassModel, EvaluationReport]:
    """Train with cross-validation and score on the held-out test part."""
    model, _ = train_with_cv(dataset, config, console)
    return model, evaluate_model(model, dataset)
