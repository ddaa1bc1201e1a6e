"""One-vs-one reduction of the four-class problem to six binary SVMs."""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from rich.console import Console

from eeg_emotion.classifier.smo import BinaryModel, decision_function, smo_train_binary
from eeg_emotion.config import KernelConfig, SMOConfig
from eeg_emotion.errors import TrainingError
from eeg_emotion.features.scaling import Standardizer, fit_standardizer, standardize
from eeg_emotion.models import LABELS, Dataset, EmotionLabel

LABEL_PAIRS: tuple[tuple[EmotionLabel, EmotionLabel], ...] = tuple(combinations(LABELS, 2))


@dataclass(frozen=True)
class MulticlassModel:
    """Six pairwise models plus the standardizer fitted on their training rows."""

    models: tuple[BinaryModel, ...]
    standardizer: Standardizer
    kernel: KernelConfig
    c: float
    seed: int
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        pairs = [m.pair for m in self.models]
        if len(pairs) != len(LABEL_PAIRS) or set(pairs) != set(LABEL_PAIRS):
            raise TrainingError(f"expected one model per label pair, got {pairs}")

    @property
    def unconverged(self) -> list[BinaryModel]:
        return [m for m in self.models if not m.converged]


def pair_seed(seed: int, pair: tuple[EmotionLabel, EmotionLabel]) -> int:
    """Independent solver seed per label pair, derived from the root seed."""
    sequence = np.random.SeedSequence([seed, int(pair[0]), int(pair[1])])
    return int(sequence.generate_state(1)[0])


def train_multiclass(
    train: Dataset,
    kernel: KernelConfig,
    smo: SMOConfig | None = None,
    seed: int = 0,
    console: Console | None = None,
) -> MulticlassModel:
    """
    Standardize the training matrix and fit one SVM per label pair.

    For pair ``(a, b)`` with ``a < b`` label a is the positive class.

    Raises:
        TrainingError: A label has no training vectors
    """
    smo = smo or SMOConfig()
    missing = train.missing_labels()
    if missing:
        names = ", ".join(label.name.lower() for label in missing)
        raise TrainingError(f"training set has no samples for: {names}")

    X = train.feature_matrix()
    labels = train.labels
    standardizer = fit_standardizer(X)
    Xs = standardize(X, standardizer)

    models = []
    for pair in LABEL_PAIRS:
        positive, negative = pair
        rows = np.flatnonzero((labels == positive) | (labels == negative))
        y = np.where(labels[rows] == positive, 1.0, -1.0)
        model = smo_train_binary(Xs[rows], y, kernel, smo, seed=pair_seed(seed, pair), pair=pair)
        if console:
            status = ""
            if not model.converged:
                status = f" [yellow](max violation {model.max_violation:.3g})"
            console.print(
                f"  [dim]→ {positive.display_name} vs {negative.display_name}: "
                f"{model.n_support} support vectors, {model.n_sweeps} sweeps[/dim]{status}"
            )
        models.append(model)

    return MulticlassModel(
        tuple(models),
        standardizer,
        kernel,
        smo.c,
        seed,
        metadata={"n_train": len(train), "label_counts": _count_names(train)},
    )


def _count_names(dataset: Dataset) -> dict[str, int]:
    return {label.name.lower(): n for label, n in dataset.label_counts().items()}


def tally_votes(decisions: list[tuple[EmotionLabel, float]]) -> EmotionLabel:
    """
    Majority vote over pairwise decisions ``(winner, score)``.

    Ties go to the label with the largest summed |score| over the votes it
    won, then to the lowest quadrant.
    """
    votes = {label: 0 for label in LABELS}
    margin = {label: 0.0 for label in LABELS}
    for winner, score in decisions:
        votes[winner] += 1
        margin[winner] += abs(score)
    return min(LABELS, key=lambda label: (-votes[label], -margin[label], label.quadrant))


def pairwise_scores(model: MulticlassModel, X) -> np.ndarray:
    """(n, 6) raw scores in LABEL_PAIRS order for unstandardized rows."""
    Xs = standardize(np.atleast_2d(np.asarray(X, dtype=float)), model.standardizer)
    return np.column_stack([decision_function(m, Xs) for m in _ordered(model)])


def _ordered(model: MulticlassModel) -> list[BinaryModel]:
    by_pair = {m.pair: m for m in model.models}
    return [by_pair[pair] for pair in LABEL_PAIRS]


def predict_many(model: MulticlassModel, X) -> list[EmotionLabel]:
    """Predicted label for every row of X."""
    scores = pairwise_scores(model, X)
    predictions = []
    for row in scores:
        decisions = [
            (positive if score >= 0 else negative, float(score))
            for (positive, negative), score in zip(LABEL_PAIRS, row, strict=True)
        ]
        predictions.append(tally_votes(decisions))
    return predictions


def predict(model: MulticlassModel, x) -> EmotionLabel:
    """Predicted emotion for one raw feature vector."""
    return predict_many(model, np.asarray(x, dtype=float).reshape(1, -1))[0]
