"""Assembly of the 34-value feature vector of one trial.

Layout (see models.FEATURE_NAMES):
    [0..7]   PSD mean, variance per channel (TP9, AF7, AF8, TP10)
    [8..9]   Pearson correlation for (TP9, TP10), (AF7, AF8)
    [10..11] DASM for the same pairs
    [12..13] RASM for the same pairs
    [14..33] band power per channel x band, channel-major, delta..gamma
"""

import numpy as np

from eeg_emotion.config import FeatureConfig, WelchSpec
from eeg_emotion.features.asymmetry import absolute_power, dasm, pearson_correlation, rasm
from eeg_emotion.features.spectral import band_power, psd_stats, welch_psd
from eeg_emotion.models import BANDS, CHANNELS, HEMISPHERE_PAIRS, FeatureVector, Trial
from eeg_emotion.preprocess.bands import decompose_bands


def extract_features(
    trial: Trial,
    welch: WelchSpec | None = None,
    features: FeatureConfig | None = None,
) -> FeatureVector:
    """
    Compute the feature vector of a preprocessed trial.

    Correlation, absolute power and PSD use the smoothed broadband signal;
    band powers come from the PSD or, with ``band_power_method="filtered"``,
    from the band-decomposed series.

    Raises:
        UndefinedCorrelationError, AsymmetryDivisionError: The trial is
            degenerate (constant or silent channel) and must be flagged
        LengthError, RangeError: The trial is too short for the estimator
    """
    welch = welch or WelchSpec()
    features = features or FeatureConfig()
    rec = trial.recording
    fs = rec.sample_rate_hz

    spectra = [welch_psd(rec.samples[:, ch], fs, welch) for ch in CHANNELS]

    psd_part = []
    for spectrum in spectra:
        psd_part.extend(psd_stats(spectrum, welch.stats_range))

    powers = [absolute_power(rec.samples[:, ch]) for ch in CHANNELS]
    correlations = [
        pearson_correlation(rec.samples[:, left], rec.samples[:, right])
        for left, right in HEMISPHERE_PAIRS
    ]
    dasms = [dasm(powers[left], powers[right]) for left, right in HEMISPHERE_PAIRS]
    rasms = [rasm(powers[left], powers[right]) for left, right in HEMISPHERE_PAIRS]

    if features.band_power_method == "filtered":
        band_part = decompose_bands(rec, features.filter_order).band_powers().ravel().tolist()
    else:
        band_part = [band_power(spectrum, band) for spectrum in spectra for band in BANDS]

    return FeatureVector(np.array(psd_part + correlations + dasms + rasms + band_part))
