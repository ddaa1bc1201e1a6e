"""Core domain types shared by every pipeline stage.

Channel order (TP9, AF7, AF8, TP10) and the 34-feature order defined here are
used verbatim by the file formats, the feature extractor and the reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum, IntEnum

import numpy as np

from eeg_emotion.errors import ConfigError, DimensionError


class ChannelId(IntEnum):
    """Muse electrode positions in stream order."""

    TP9 = 0
    AF7 = 1
    AF8 = 2
    TP10 = 3


CHANNELS: tuple[ChannelId, ...] = tuple(ChannelId)

# (left, right) hemispheric pairs; odd electrode numbers sit on the left
HEMISPHERE_PAIRS: tuple[tuple[ChannelId, ChannelId], ...] = (
    (ChannelId.TP9, ChannelId.TP10),
    (ChannelId.AF7, ChannelId.AF8),
)


class EmotionLabel(IntEnum):
    """Emotion classes, valued by their valence-arousal quadrant."""

    HAPPY = 1
    ANGRY = 2
    SAD = 3
    RELAXED = 4

    @property
    def quadrant(self) -> int:
        return int(self.value)

    @property
    def display_name(self) -> str:
        return self.name.capitalize()

    @classmethod
    def from_quadrant(cls, quadrant: int) -> EmotionLabel:
        try:
            return cls(int(quadrant))
        except ValueError as e:
            raise ConfigError(f"quadrant must be 1..4, got {quadrant!r}") from e

    @classmethod
    def parse(cls, value: str | int) -> EmotionLabel:
        """Accept a quadrant number, ``"Q2"`` or a label name such as ``"angry"``."""
        if isinstance(value, int):
            return cls.from_quadrant(value)
        text = str(value).strip()
        if text.upper().startswith("Q") and text[1:].isdigit():
            return cls.from_quadrant(int(text[1:]))
        if text.isdigit():
            return cls.from_quadrant(int(text))
        try:
            return cls[text.upper()]
        except KeyError as e:
            raise ConfigError(f"unknown emotion label: {value!r}") from e


LABELS: tuple[EmotionLabel, ...] = tuple(EmotionLabel)


@dataclass(frozen=True)
class BandDefinition:
    """A named EEG frequency band in Hz."""

    name: str
    low_hz: float
    high_hz: float

    def __post_init__(self) -> None:
        if not 0 <= self.low_hz < self.high_hz:
            raise ConfigError(
                f"band {self.name}: need 0 <= low < high, got ({self.low_hz}, {self.high_hz})"
            )

    @property
    def center_hz(self) -> float:
        return (self.low_hz + self.high_hz) / 2

    def check_nyquist(self, fs: float) -> None:
        """Raise ConfigError if the band does not fit below fs/2."""
        if self.high_hz >= fs / 2:
            raise ConfigError(
                f"band {self.name} upper edge {self.high_hz} Hz is not below "
                f"Nyquist ({fs / 2} Hz)"
            )


# Edges as printed; the 7-8 Hz gap between theta and alpha is intentional.
BANDS: tuple[BandDefinition, ...] = (
    BandDefinition("delta", 0.0, 4.0),
    BandDefinition("theta", 4.0, 7.0),
    BandDefinition("alpha", 8.0, 12.0),
    BandDefinition("beta", 12.0, 30.0),
    BandDefinition("gamma", 30.0, 50.0),
)


def band_by_name(name: str) -> BandDefinition:
    for band in BANDS:
        if band.name == name:
            return band
    raise ConfigError(f"unknown band: {name!r}")


class Provenance(Enum):
    """Where a dataset came from."""

    REAL = "real"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True)
class Recording:
    """A 4-channel EEG sample matrix in microvolts.

    ``samples`` has shape (n_samples, 4); cells flagged in ``missing_mask``
    hold NaN until imputed.
    """

    subject_id: str
    sample_rate_hz: float
    samples: np.ndarray
    missing_mask: np.ndarray

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=float)
        mask = np.array(self.missing_mask, dtype=bool)
        samples.setflags(write=False)
        mask.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "missing_mask", mask)

    @classmethod
    def from_samples(
        cls, samples: np.ndarray, sample_rate_hz: float = 256.0, subject_id: str = "S00"
    ) -> Recording:
        """Build a recording, marking NaN cells as missing."""
        samples = np.asarray(samples, dtype=float)
        return cls(subject_id, sample_rate_hz, samples, np.isnan(samples))

    @property
    def n_samples(self) -> int:
        return int(self.samples.shape[0])

    @property
    def duration_s(self) -> float:
        return self.n_samples / self.sample_rate_hz

    @property
    def is_complete(self) -> bool:
        return not bool(self.missing_mask.any())

    def channel(self, channel: ChannelId) -> np.ndarray:
        return self.samples[:, int(channel)]

    def with_samples(self, samples: np.ndarray) -> Recording:
        """Return a copy with replaced samples; NaN cells become the new mask."""
        samples = np.asarray(samples, dtype=float)
        return replace(self, samples=samples, missing_mask=np.isnan(samples))


@dataclass(frozen=True)
class Violation:
    """A broken invariant, with the first offending position."""

    rule: str
    message: str
    index: int | None = None
    channel: ChannelId | None = None

    def __str__(self) -> str:
        where = ""
        if self.index is not None:
            where = f" at sample {self.index}"
            if self.channel is not None:
                where += f" ({self.channel.name})"
        return f"{self.rule}{where}: {self.message}"


def validate_recording(rec: Recording, preprocessed: bool = False) -> list[Violation]:
    """Check the Recording invariants without raising.

    Args:
        rec: Recording to check
        preprocessed: When True, any remaining missing cell is reported as an
            "unimputed sample" violation

    Returns:
        Empty list if every invariant holds, otherwise one Violation per rule
    """
    violations: list[Violation] = []
    samples = np.asarray(rec.samples)

    if not (math.isfinite(rec.sample_rate_hz) and rec.sample_rate_hz > 0):
        violations.append(
            Violation("sample rate", f"must be positive, got {rec.sample_rate_hz}")
        )

    if samples.ndim != 2:
        violations.append(Violation("shape", f"samples must be 2-D, got {samples.ndim}-D"))
        return violations

    if samples.shape[0] < 1:
        violations.append(Violation("length", "recording has no samples"))

    if samples.shape[1] != len(CHANNELS):
        violations.append(
            Violation(
                "channel arity",
                f"expected {len(CHANNELS)} channel slots, got {samples.shape[1]}",
                index=0,
            )
        )
        return violations

    mask = np.asarray(rec.missing_mask, dtype=bool)
    if mask.shape != samples.shape:
        violations.append(
            Violation("mask shape", f"mask {mask.shape} does not match samples {samples.shape}")
        )
        return violations

    unflagged = ~np.isfinite(samples) & ~mask
    if unflagged.any():
        row, col = np.argwhere(unflagged)[0]
        violations.append(
            Violation(
                "non-finite sample",
                "non-finite value not flagged as missing",
                index=int(row),
                channel=ChannelId(int(col)),
            )
        )

    if preprocessed and mask.any():
        row, col = np.argwhere(mask)[0]
        violations.append(
            Violation(
                "unimputed sample",
                "missing cell remains after preprocessing",
                index=int(row),
                channel=ChannelId(int(col)),
            )
        )

    return violations


def window_length(duration_s: float, sample_rate_hz: float) -> int:
    """Number of whole samples in `duration_s` seconds; trailing fractions are dropped."""
    # tolerance absorbs binary rounding such as 2.3 * 10 == 22.999999999999996
    return math.floor(duration_s * sample_rate_hz + 1e-9)


@dataclass(frozen=True)
class Trial:
    """A recording window aligned to one stimulus video.

    The recording is imputed and truncated on construction; ``smoothed`` turns
    True once the Savitzky-Golay stage has run.
    """

    recording: Recording
    label: EmotionLabel
    video_id: str
    duration_s: float
    smoothed: bool = False

    def __post_init__(self) -> None:
        expected = window_length(self.duration_s, self.recording.sample_rate_hz)
        if self.recording.n_samples != expected:
            raise DimensionError(
                f"trial {self.key}: expected {expected} samples for "
                f"{self.duration_s} s, got {self.recording.n_samples}"
            )
        problems = validate_recording(self.recording, preprocessed=True)
        if problems:
            raise DimensionError(f"trial {self.key}: {problems[0]}")

    @property
    def subject_id(self) -> str:
        return self.recording.subject_id

    @property
    def key(self) -> str:
        return f"{self.recording.subject_id}/{self.video_id}"

    @property
    def sample_rate_hz(self) -> float:
        return self.recording.sample_rate_hz


def feature_names() -> list[str]:
    """Canonical names of the 34 features, in vector order."""
    names: list[str] = []
    for ch in CHANNELS:
        names += [f"psd_mean_{ch.name}", f"psd_var_{ch.name}"]
    for prefix in ("corr", "dasm", "rasm"):
        names += [f"{prefix}_{left.name}_{right.name}" for left, right in HEMISPHERE_PAIRS]
    for ch in CHANNELS:
        names += [f"power_{ch.name}_{band.name}" for band in BANDS]
    return names


FEATURE_NAMES: tuple[str, ...] = tuple(feature_names())
N_FEATURES = len(FEATURE_NAMES)

PSD_SLICE = slice(0, 8)
CORRELATION_SLICE = slice(8, 10)
DASM_SLICE = slice(10, 12)
RASM_SLICE = slice(12, 14)
BAND_POWER_SLICE = slice(14, 34)


@dataclass(frozen=True)
class FeatureVector:
    """The 34 frequency-domain features of one trial."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float).copy()
        if values.shape != (N_FEATURES,):
            raise DimensionError(
                f"feature vector must have {N_FEATURES} values, got shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return N_FEATURES

    def __getitem__(self, item):
        return self.values[item]

    def band_power(self, channel: ChannelId, band_name: str) -> float:
        band_index = [b.name for b in BANDS].index(band_name)
        return float(self.values[BAND_POWER_SLICE][int(channel) * len(BANDS) + band_index])


@dataclass(frozen=True)
class DatasetEntry:
    """One labelled item of a dataset: a Trial or its FeatureVector."""

    item: Trial | FeatureVector
    label: EmotionLabel
    subject_id: str
    video_id: str = ""

    @property
    def key(self) -> tuple[str, str]:
        return (self.subject_id, self.video_id)


@dataclass(frozen=True)
class Dataset:
    """An ordered, labelled collection of trials or feature vectors."""

    entries: tuple[DatasetEntry, ...]
    provenance: Provenance = Provenance.REAL
    seed: int | None = None
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def labels(self) -> np.ndarray:
        return np.array([int(e.label) for e in self.entries], dtype=int)

    @property
    def subject_ids(self) -> list[str]:
        return [e.subject_id for e in self.entries]

    @property
    def keys(self) -> list[tuple[str, str]]:
        return [e.key for e in self.entries]

    def label_counts(self) -> dict[EmotionLabel, int]:
        counts = {label: 0 for label in LABELS}
        for entry in self.entries:
            counts[entry.label] += 1
        return counts

    def missing_labels(self) -> list[EmotionLabel]:
        return [label for label, n in self.label_counts().items() if n == 0]

    def feature_matrix(self) -> np.ndarray:
        """Stack FeatureVector items into an (n, 34) matrix."""
        rows = []
        for entry in self.entries:
            if not isinstance(entry.item, FeatureVector):
                raise DimensionError(f"entry {entry.key} holds a trial, not a feature vector")
            rows.append(entry.item.values)
        if not rows:
            return np.empty((0, N_FEATURES))
        return np.vstack(rows)

    def subset(self, indices) -> Dataset:
        """Entries at ``indices`` in the given order."""
        picked = tuple(self.entries[int(i)] for i in indices)
        return replace(self, entries=picked)
