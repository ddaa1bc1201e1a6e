"""Savitzky-Golay smoothing by local least-squares polynomial fits.

The smoother is the hat matrix of a polynomial fit over one window: its middle
row gives the convolution weights for interior samples, and its first and last
rows evaluate the fit over the first and last window at the boundary samples,
so the output keeps the input length.
"""

from dataclasses import replace
from functools import lru_cache

import numpy as np

from eeg_emotion.config import SavGolSpec, build_model
from eeg_emotion.errors import LengthError
from eeg_emotion.models import CHANNELS, Trial


def make_savgol_spec(window_len: int = 11, poly_order: int = 3) -> SavGolSpec:
    """Validated SavGolSpec; even windows or too-high orders raise ConfigError."""
    return build_model(SavGolSpec, {"window_len": window_len, "poly_order": poly_order})


@lru_cache(maxsize=32)
def _hat_matrix(window_len: int, poly_order: int) -> np.ndarray:
    half = window_len // 2
    positions = np.arange(-half, half + 1, dtype=float)
    design = np.vander(positions, poly_order + 1, increasing=True)
    hat = design @ np.linalg.pinv(design)
    hat.setflags(write=False)
    return hat


def savgol_coefficients(spec: SavGolSpec) -> np.ndarray:
    """
    Convolution weights of the smoother (length ``window_len``).

    Row of the least-squares fit over positions -m..m evaluated at 0; the
    weights sum to 1 because constants are reproduced exactly.
    """
    return _hat_matrix(spec.window_len, spec.poly_order)[spec.half_width].copy()


def savgol_smooth(signal: np.ndarray, spec: SavGolSpec) -> np.ndarray:
    """
    Smooth a complete signal, keeping its length.

    Raises:
        LengthError: If the signal is shorter than the window
    """
    x = np.asarray(signal, dtype=float)
    w, m = spec.window_len, spec.half_width
    if x.ndim != 1 or x.size < w:
        raise LengthError(f"signal of {x.size} samples is shorter than window {w}")

    hat = _hat_matrix(w, spec.poly_order)
    out = np.empty_like(x)
    out[m : x.size - m] = np.correlate(x, hat[m], mode="valid")
    out[:m] = hat[:m] @ x[:w]
    out[x.size - m :] = hat[m + 1 :] @ x[-w:]
    return out


def smooth_trial(trial: Trial, spec: SavGolSpec) -> Trial:
    """Apply the smoother to every channel of a trial."""
    samples = np.column_stack(
        [savgol_smooth(trial.recording.samples[:, ch], spec) for ch in CHANNELS]
    )
    return replace(trial, recording=trial.recording.with_samples(samples), smoothed=True)
