"""Channel-pair statistics: correlation and hemispheric asymmetry of absolute power."""

import numpy as np
from scipy import stats

from eeg_emotion.errors import (
    AsymmetryDivisionError,
    DimensionError,
    LengthError,
    UndefinedCorrelationError,
)


def pearson_correlation(x: np.ndarray, y: np.ndarray) -> float:
    """
    Pearson coefficient of two equally long series.

    Raises:
        DimensionError: Lengths differ or are below 2
        UndefinedCorrelationError: Either series is constant
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size < 2:
        raise DimensionError(f"need two 1-D series of equal length >= 2, got {x.shape}, {y.shape}")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise UndefinedCorrelationError("correlation is undefined for a constant series")
    return float(np.clip(stats.pearsonr(x, y).statistic, -1.0, 1.0))


def absolute_power(signal: np.ndarray) -> float:
    """Mean squared amplitude in uV^2."""
    x = np.asarray(signal, dtype=float)
    if x.size == 0:
        raise LengthError("absolute power of an empty signal")
    return float(np.mean(x * x))


def dasm(left_power: float, right_power: float) -> float:
    """Differential asymmetry: left minus right."""
    return left_power - right_power


def rasm(left_power: float, right_power: float) -> float:
    """
    Rational asymmetry: left over right.

    Raises:
        AsymmetryDivisionError: If the right-hemisphere power is zero
    """
    if right_power == 0:
        raise AsymmetryDivisionError("RASM is undefined for zero right-hemisphere power")
    return left_power / right_power
