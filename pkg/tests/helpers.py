"""Builders for small trials and separable feature datasets."""

import numpy as np

from eeg_emotion.models import (
    LABELS,
    N_FEATURES,
    Dataset,
    DatasetEntry,
    FeatureVector,
    Recording,
    Trial,
)

FS = 256.0


def sine(freq_hz: float, n_samples: int, amplitude: float = 1.0, fs: float = FS) -> np.ndarray:
    t = np.arange(n_samples) / fs
    return amplitude * np.sin(2.0 * np.pi * freq_hz * t)


def make_trial(samples: np.ndarray, label=LABELS[0], fs: float = FS) -> Trial:
    """Wrap a complete (n, 4) matrix into a Trial whose duration matches its length."""
    rec = Recording.from_samples(samples, fs, "S01")
    return Trial(rec, label, "V01", rec.n_samples / fs)


def cluster_dataset(per_label: int, spread: float = 0.1, seed: int = 0) -> Dataset:
    """Four tight clusters, each raised on its own block of eight features."""
    rng = np.random.default_rng(seed)
    entries = []
    for label in LABELS:
        center = np.zeros(N_FEATURES)
        block = (int(label) - 1) * 8
        center[block : block + 8] = 5.0
        for i in range(per_label):
            values = center + rng.normal(0.0, spread, N_FEATURES)
            entry = DatasetEntry(FeatureVector(values), label, f"S{i + 1:02d}", f"Q{int(label)}")
            entries.append(entry)
    return Dataset(tuple(entries))
