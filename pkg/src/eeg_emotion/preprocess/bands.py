"""Five-band decomposition with zero-phase Butterworth filters."""

from dataclasses import dataclass

import numpy as np
from scipy import signal as sp_signal

from eeg_emotion.errors import LengthError
from eeg_emotion.models import BANDS, CHANNELS, BandDefinition, ChannelId, Recording, Trial


def butter_band_sos(band: BandDefinition, fs: float, order: int = 4) -> np.ndarray:
    """Second-order sections for one band; a band starting at 0 Hz becomes a low-pass."""
    band.check_nyquist(fs)
    if band.low_hz == 0:
        return sp_signal.butter(order, band.high_hz, btype="lowpass", fs=fs, output="sos")
    return sp_signal.butter(
        order, [band.low_hz, band.high_hz], btype="bandpass", fs=fs, output="sos"
    )


def min_filter_length(sos: np.ndarray) -> int:
    """Samples needed beyond the edge padding used by sosfiltfilt."""
    return 3 * (2 * len(sos) + 1) + 1


def bandpass(signal: np.ndarray, band: BandDefinition, fs: float, order: int = 4) -> np.ndarray:
    """
    Zero-phase band-limited copy of ``signal`` (forward-backward, effective order 2*order).

    Raises:
        ConfigError: If the band reaches Nyquist
        LengthError: If the signal is too short for the edge padding
    """
    x = np.asarray(signal, dtype=float)
    sos = butter_band_sos(band, fs, order)
    needed = min_filter_length(sos)
    if x.size < needed:
        raise LengthError(f"{band.name} filter needs at least {needed} samples, got {x.size}")
    return sp_signal.sosfiltfilt(sos, x, padlen=needed - 1)


@dataclass(frozen=True)
class BandSignals:
    """Band-limited series with shape (channel, band, sample)."""

    series: np.ndarray
    sample_rate_hz: float

    def get(self, channel: ChannelId, band_name: str) -> np.ndarray:
        band_index = [b.name for b in BANDS].index(band_name)
        return self.series[int(channel), band_index]

    @property
    def n_series(self) -> int:
        return self.series.shape[0] * self.series.shape[1]

    def band_powers(self) -> np.ndarray:
        """Mean squared amplitude per (channel, band)."""
        return np.mean(self.series**2, axis=-1)


def decompose_bands(source: Trial | Recording, order: int = 4) -> BandSignals:
    """Split each of the four channels into the five EEG bands."""
    rec = source.recording if isinstance(source, Trial) else source
    fs = rec.sample_rate_hz
    series = np.empty((len(CHANNELS), len(BANDS), rec.n_samples))
    for ch in CHANNELS:
        for b, band in enumerate(BANDS):
            series[int(ch), b] = bandpass(rec.samples[:, ch], band, fs, order)
    return BandSignals(series, fs)
