"""
Seeded synthetic EEG in the recording and manifest formats that ingest reads.

Every channel is a sum of one sinusoid per band (at the band centre) with
label-specific amplitudes, plus 1/f noise. Left channels are scaled by
``1 + asymmetry`` and right channels by ``1 - asymmetry``; right-hemisphere
components lag their left partner by a label-specific phase. Each
(subject, video) draws from its own generator, so any subset of trials can be
regenerated on its own with identical bytes.
"""

from pathlib import Path

import numpy as np
from rich.console import Console

from eeg_emotion.config import FileFormat, SynthConfig
from eeg_emotion.core.writer import write_document
from eeg_emotion.ingest.manifest import ManifestEntry, SessionManifest, save_manifest
from eeg_emotion.ingest.recording_file import serialize_recording
from eeg_emotion.models import (
    BANDS,
    CHANNELS,
    HEMISPHERE_PAIRS,
    LABELS,
    EmotionLabel,
    Provenance,
    Recording,
    window_length,
)

MANIFEST_FILENAME = "manifest.json"
SYNTH_CONFIG_FILENAME = "synth-config.yaml"
RECORDING_DIRNAME = "recordings"


def subject_code(subject: int) -> str:
    return f"S{subject:02d}"


def video_code(video: int) -> str:
    return f"V{video:02d}"


def pink_noise(rng: np.random.Generator, n_samples: int, std: float) -> np.ndarray:
    """White noise shaped to a 1/f power spectrum, scaled to ``std``."""
    if std == 0.0:
        return np.zeros(n_samples)
    spectrum = np.fft.rfft(rng.standard_normal(n_samples))
    freqs = np.fft.rfftfreq(n_samples)
    envelope = np.zeros_like(freqs)
    envelope[1:] = 1.0 / np.sqrt(freqs[1:])
    noise = np.fft.irfft(spectrum * envelope, n=n_samples)
    return noise * (std / noise.std())


def subject_gain(cfg: SynthConfig, subject: int) -> float:
    """Global amplitude factor of one subject (lognormal around 1)."""
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, subject]))
    return float(rng.lognormal(0.0, cfg.subject_gain_std))


def label_for_video(video: int) -> EmotionLabel:
    """Videos cycle through the four quadrants: V01 happy, V02 angry, ..."""
    return LABELS[(video - 1) % len(LABELS)]


def generate_trial(
    label: EmotionLabel, subject: int, video: int, cfg: SynthConfig
) -> tuple[Recording, ManifestEntry]:
    """
    Synthesize the raw recording of one stimulus presentation.

    Args:
        label: Emotion whose band profile drives the signal
        subject: 1-based subject number
        video: 1-based video number within the subject
        cfg: Dataset shape and class profiles

    Returns:
        The recording (values rounded to ``cfg.precision`` decimals, dropout
        cells NaN) and its manifest entry, pointing at
        ``recordings/Sxx/Vyy.csv``
    """
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, subject, video]))
    n_samples = window_length(cfg.duration_s, cfg.fs)
    t = np.arange(n_samples) / cfg.fs

    gain = subject_gain(cfg, subject)
    asymmetry = cfg.asymmetry_for(label)
    lag = cfg.phase_lag_for(label)
    amplitudes = np.asarray(cfg.profile(label)) * gain
    jitter = 1.0 + rng.uniform(-cfg.amplitude_jitter, cfg.amplitude_jitter, size=len(BANDS))
    amplitudes = amplitudes * jitter

    samples = np.zeros((n_samples, len(CHANNELS)))
    for left, right in HEMISPHERE_PAIRS:
        phases = rng.uniform(0.0, 2.0 * np.pi, size=len(BANDS))
        for band, amplitude, phase in zip(BANDS, amplitudes, phases, strict=True):
            angle = 2.0 * np.pi * band.center_hz * t + phase
            samples[:, left] += amplitude * (1.0 + asymmetry) * np.sin(angle)
            samples[:, right] += amplitude * (1.0 - asymmetry) * np.sin(angle - lag)
    for channel in CHANNELS:
        samples[:, channel] += pink_noise(rng, n_samples, cfg.noise_std)

    samples = np.round(samples, cfg.precision)
    dropout = rng.random(samples.shape) < cfg.missing_rate
    samples[dropout] = np.nan

    subject_id = subject_code(subject)
    video_id = video_code(video)
    recording = Recording.from_samples(samples, cfg.fs, subject_id)
    entry = ManifestEntry(
        subject_id=subject_id,
        video_id=video_id,
        label=label,
        session=(video - 1) // len(LABELS) + 1,
        onset=0,
        duration_s=cfg.duration_s,
        recording=Path(RECORDING_DIRNAME) / subject_id / f"{video_id}.csv",
    )
    return recording, entry


def synth_provenance(cfg: SynthConfig) -> dict:
    return {
        "source": Provenance.SYNTHETIC.value,
        "seed": cfg.seed,
        "synth": cfg.model_dump(mode="json"),
    }


def generate_dataset(cfg: SynthConfig, out_dir: Path, console: Console | None = None) -> Path:
    """
    Write a balanced synthetic dataset: recordings, manifest and the config used.

    The tree holds ``n_subjects * 4 * videos_per_quadrant`` recordings; its
    bytes depend on ``cfg`` only.

    Returns:
        Path of the written manifest
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    entries: list[ManifestEntry] = []
    n_videos = len(LABELS) * cfg.videos_per_quadrant

    for subject in range(1, cfg.n_subjects + 1):
        for video in range(1, n_videos + 1):
            recording, entry = generate_trial(label_for_video(video), subject, video, cfg)
            path = out_dir / entry.recording
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(serialize_recording(recording, cfg.precision))
            entries.append(entry)
        if console:
            console.print(f"  [dim]→ {subject_code(subject)}: {n_videos} recordings[/dim]")

    manifest = SessionManifest(entries=entries, provenance=synth_provenance(cfg))
    manifest_path = out_dir / MANIFEST_FILENAME
    save_manifest(manifest, manifest_path)
    write_document(cfg.model_dump(mode="json"), out_dir / SYNTH_CONFIG_FILENAME, FileFormat.YAML)
    return manifest_path
