"""Kernel functions and Gram matrices for the four kernel families."""

import numpy as np
from scipy.spatial.distance import cdist

from eeg_emotion.config import KernelConfig
from eeg_emotion.errors import DimensionError


def _as_rows(X, name: str) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[np.newaxis, :]
    if X.ndim != 2 or X.shape[0] == 0:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {X.shape}")
    return X


def kernel_matrix(cfg: KernelConfig, X, Y) -> np.ndarray:
    """
    K[i, j] = k(X[i], Y[j]) for the configured kernel.

    Raises:
        DimensionError: Rows of X and Y differ in length
    """
    X = _as_rows(X, "X")
    Y = _as_rows(Y, "Y")
    if X.shape[1] != Y.shape[1]:
        raise DimensionError(f"dimension mismatch: {X.shape[1]} vs {Y.shape[1]}")

    if cfg.kind == "linear":
        return X @ Y.T
    if cfg.kind == "polynomial":
        return (cfg.gamma * (X @ Y.T) + cfg.coef0) ** cfg.degree

    sq_dist = cdist(X, Y, metric="sqeuclidean")
    if cfg.kind == "rbf":
        return np.exp(-cfg.gamma * sq_dist)
    return np.exp(-sq_dist / (2.0 * cfg.sigma**2))


def kernel_eval(cfg: KernelConfig, x, y) -> float:
    """Kernel value for one pair of vectors."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise DimensionError(f"need two vectors of equal length, got {x.shape} and {y.shape}")
    return float(kernel_matrix(cfg, x, y)[0, 0])


def gram_matrix(X, cfg: KernelConfig) -> np.ndarray:
    """Symmetric n x n Gram matrix of the rows of X."""
    X = _as_rows(X, "X")
    K = kernel_matrix(cfg, X, X)
    return 0.5 * (K + K.T)
