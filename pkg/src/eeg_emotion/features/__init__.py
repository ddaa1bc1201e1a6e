"""Frequency-domain features: PSD statistics, correlation, asymmetry and band power."""

from eeg_emotion.features.asymmetry import absolute_power, dasm, pearson_correlation, rasm
from eeg_emotion.features.extract import extract_features
from eeg_emotion.features.matrix_file import read_feature_matrix, write_feature_matrix
from eeg_emotion.features.scaling import Standardizer, fit_standardizer, standardize
from eeg_emotion.features.spectral import Spectrum, band_power, psd_stats, welch_psd

__all__ = [
    "Spectrum",
    "Standardizer",
    "absolute_power",
    "band_power",
    "dasm",
    "extract_features",
    "fit_standardizer",
    "pearson_correlation",
    "psd_stats",
    "rasm",
    "read_feature_matrix",
    "standardize",
    "welch_psd",
    "write_feature_matrix",
]
