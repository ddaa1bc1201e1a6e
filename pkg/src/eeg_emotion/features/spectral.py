"""Welch power spectral density and the statistics derived from it."""

from dataclasses import dataclass

import numpy as np
from scipy import signal as sp_signal
from scipy.integrate import trapezoid

from eeg_emotion.config import WelchSpec
from eeg_emotion.errors import LengthError, RangeError
from eeg_emotion.models import BandDefinition


@dataclass(frozen=True)
class Spectrum:
    """One-sided PSD in uV^2/Hz on an ascending frequency grid."""

    freqs: np.ndarray
    power: np.ndarray

    def __post_init__(self) -> None:
        if self.freqs.shape != self.power.shape:
            raise RangeError(f"freqs {self.freqs.shape} and power {self.power.shape} differ")

    @property
    def resolution_hz(self) -> float:
        return float(self.freqs[1] - self.freqs[0]) if self.freqs.size > 1 else 0.0

    def select(self, low_hz: float, high_hz: float) -> np.ndarray:
        """Boolean mask of bins inside [low_hz, high_hz]."""
        if low_hz < self.freqs[0] or high_hz > self.freqs[-1]:
            raise RangeError(
                f"[{low_hz}, {high_hz}] Hz lies outside the spectrum support "
                f"[{self.freqs[0]}, {self.freqs[-1]}] Hz"
            )
        return (self.freqs >= low_hz) & (self.freqs <= high_hz)

    def total_power(self) -> float:
        """Integral of the PSD over the whole grid."""
        return float(trapezoid(self.power, self.freqs))


def welch_psd(signal: np.ndarray, fs: float, spec: WelchSpec | None = None) -> Spectrum:
    """
    Averaged modified periodogram over overlapping Hann segments.

    Density scaling makes the integral over [0, fs/2] match the signal variance.

    Raises:
        LengthError: If the signal is shorter than one segment
    """
    spec = spec or WelchSpec()
    x = np.asarray(signal, dtype=float)
    if x.size < spec.segment_len:
        raise LengthError(f"signal of {x.size} samples is shorter than segment {spec.segment_len}")
    freqs, power = sp_signal.welch(
        x,
        fs=fs,
        window=spec.taper,
        nperseg=spec.segment_len,
        noverlap=spec.overlap_samples,
        detrend="constant",
        scaling="density",
        average="mean",
    )
    return Spectrum(freqs, np.maximum(power, 0.0))


def psd_stats(
    spectrum: Spectrum, freq_range: tuple[float, float] = (0.5, 50.0)
) -> tuple[float, float]:
    """
    Mean and population variance of the PSD bins inside ``freq_range``.

    Raises:
        RangeError: If the range leaves the spectrum or selects no bin
    """
    selected = spectrum.power[spectrum.select(*freq_range)]
    if selected.size == 0:
        raise RangeError(f"no spectrum bins inside {freq_range} Hz")
    return float(selected.mean()), float(selected.var())


def band_power(spectrum: Spectrum, band: BandDefinition) -> float:
    """
    Trapezoidal integral of the PSD over [band.low_hz, band.high_hz].

    Raises:
        RangeError: If the band leaves the spectrum or covers fewer than two bins
    """
    mask = spectrum.select(band.low_hz, band.high_hz)
    if mask.sum() < 2:
        raise RangeError(f"band {band.name} covers fewer than two spectrum bins")
    return float(trapezoid(spectrum.power[mask], spectrum.freqs[mask]))
