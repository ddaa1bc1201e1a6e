"""Per-dimension standardization fitted on training vectors only."""

from dataclasses import dataclass

import numpy as np

from eeg_emotion.errors import DimensionError


@dataclass(frozen=True)
class Standardizer:
    """Column means and standard deviations; std 0 marks a pass-through column."""

    mean: np.ndarray
    std: np.ndarray

    @property
    def constant_columns(self) -> list[int]:
        return np.flatnonzero(self.std == 0).tolist()

    @classmethod
    def identity(cls, n_features: int) -> "Standardizer":
        return cls(np.zeros(n_features), np.ones(n_features))

    def to_dict(self) -> dict:
        return {
            "mean": self.mean.tolist(),
            "std": self.std.tolist(),
            "constant_columns": self.constant_columns,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Standardizer":
        return cls(np.asarray(data["mean"], dtype=float), np.asarray(data["std"], dtype=float))


def fit_standardizer(X: np.ndarray) -> Standardizer:
    """
    Population mean and std per column of the training matrix.

    Raises:
        DimensionError: Fewer than two training vectors
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise DimensionError(f"need at least two training vectors, got shape {X.shape}")
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    # exact zeros only; near-constant columns still get scaled
    std = np.where(np.ptp(X, axis=0) == 0, 0.0, std)
    return Standardizer(mean, std)


def standardize(X: np.ndarray, stats: Standardizer) -> np.ndarray:
    """Scale rows (or one vector) with stats fitted elsewhere; constant columns pass through."""
    X = np.asarray(X, dtype=float)
    if X.shape[-1] != stats.mean.shape[0]:
        raise DimensionError(f"expected {stats.mean.shape[0]} features, got {X.shape[-1]}")
    scaled = (X - stats.mean) / np.where(stats.std == 0, 1.0, stats.std)
    return np.where(stats.std == 0, X, scaled)
