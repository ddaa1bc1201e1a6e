"""Imputation, Savitzky-Golay smoothing and band decomposition."""

from eeg_emotion.preprocess.bands import BandSignals, bandpass, decompose_bands
from eeg_emotion.preprocess.impute import impute_missing, impute_recording
from eeg_emotion.preprocess.savgol import (
    make_savgol_spec,
    savgol_coefficients,
    savgol_smooth,
    smooth_trial,
)

__all__ = [
    "BandSignals",
    "bandpass",
    "decompose_bands",
    "impute_missing",
    "impute_recording",
    "make_savgol_spec",
    "savgol_coefficients",
    "savgol_smooth",
    "smooth_trial",
]
