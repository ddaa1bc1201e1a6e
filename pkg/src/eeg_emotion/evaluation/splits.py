"""Stratified hold-out split and stratified k-fold partition."""

import numpy as np
from sklearn.model_selection import train_test_split

from eeg_emotion.errors import RangeError
from eeg_emotion.models import LABELS, Dataset


def _check_label_counts(labels: np.ndarray) -> None:
    values, counts = np.unique(labels, return_counts=True)
    thin = [f"Q{int(v)} has {int(n)}" for v, n in zip(values, counts, strict=True) if n < 2]
    if thin:
        raise RangeError("every label needs at least 2 samples to split: " + ", ".join(thin))


def stratified_split_indices(
    labels, train_frac: float = 0.8, seed: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Sorted train and test indices with per-label proportions preserved."""
    labels = np.asarray(labels)
    _check_label_counts(labels)
    try:
        train_idx, test_idx = train_test_split(
            np.arange(labels.shape[0]),
            train_size=train_frac,
            stratify=labels,
            random_state=seed,
        )
    except ValueError as e:
        raise RangeError(f"cannot split {labels.shape[0]} samples at {train_frac}: {e}") from e
    return np.sort(train_idx), np.sort(test_idx)


def stratified_split(
    data: Dataset, train_frac: float = 0.8, seed: int = 0
) -> tuple[Dataset, Dataset]:
    """
    Split a dataset into disjoint train and test parts.

    Raises:
        RangeError: A label has fewer than two samples, or the split leaves
            no room for every label on both sides
    """
    train_idx, test_idx = stratified_split_indices(data.labels, train_frac, seed)
    return data.subset(train_idx), data.subset(test_idx)


def kfold_indices(labels, k: int = 10, seed: int = 0) -> list[np.ndarray]:
    """
    Deal samples into k folds whose sizes differ by at most one.

    Each label's samples are shuffled, the shuffled runs are concatenated in
    quadrant order and dealt round-robin, so every fold gets an even share of
    each label where the counts allow.
    """
    labels = np.asarray(labels)
    n = labels.shape[0]
    if k < 2:
        raise RangeError(f"need at least 2 folds, got {k}")
    if k > n:
        raise RangeError(f"cannot make {k} folds from {n} samples")

    rng = np.random.default_rng(seed)
    order = np.concatenate(
        [rng.permutation(np.flatnonzero(labels == int(label))) for label in LABELS]
        + [np.flatnonzero(~np.isin(labels, [int(label) for label in LABELS]))]
    )
    return [np.sort(order[fold::k]) for fold in range(k)]


def kfold_partition(train: Dataset, k: int = 10, seed: int = 0) -> list[np.ndarray]:
    """Index sets (into ``train``) of the k stratified folds."""
    return kfold_indices(train.labels, k, seed)
