"""Assembling labelled trials from a manifest, and the on-disk trial store."""

from pathlib import Path

import numpy as np
from rich.console import Console

from eeg_emotion.config import FileFormat
from eeg_emotion.core.loader import load_document
from eeg_emotion.core.writer import write_document
from eeg_emotion.errors import EmotionPipelineError, ManifestError, ParseError
from eeg_emotion.ingest.manifest import SessionManifest
from eeg_emotion.ingest.recording_file import read_recording
from eeg_emotion.ingest.truncate import truncate_to_stimulus
from eeg_emotion.models import (
    Dataset,
    DatasetEntry,
    EmotionLabel,
    Provenance,
    Recording,
    Trial,
    validate_recording,
)
from eeg_emotion.preprocess.impute import impute_recording

TRIAL_INDEX_FILENAME = "trials.json"
TRIAL_DIRNAME = "trials"


def _dataset_provenance(manifest: SessionManifest) -> tuple[Provenance, int | None]:
    info = manifest.provenance or {}
    if info.get("source") == Provenance.SYNTHETIC.value:
        return Provenance.SYNTHETIC, info.get("seed")
    return Provenance.REAL, None


def build_dataset(
    manifest: SessionManifest,
    impute_radius: int = 4,
    console: Console | None = None,
) -> Dataset:
    """
    Turn every manifest entry into an imputed, truncated Trial.

    Recordings are parsed once even when several entries share a file, then
    imputed and cut to each stimulus window. Order follows the manifest.

    Args:
        manifest: Session manifest to load
        impute_radius: Valid samples averaged on each side of a gap
        console: Optional Rich Console for progress output

    Returns:
        Dataset with one Trial per entry

    Raises:
        ManifestError: Listing every entry that could not be loaded
    """
    cache: dict[tuple[Path, str], Recording | str] = {}
    entries: list[DatasetEntry] = []
    problems: list[str] = []

    for entry in manifest.entries:
        path = manifest.resolve(entry)
        cache_key = (path, entry.subject_id)
        if cache_key not in cache:
            cache[cache_key] = _load_imputed(path, entry.subject_id, impute_radius)
            if console and isinstance(cache[cache_key], Recording):
                console.print(f"  [dim]→ loaded {entry.recording.as_posix()}[/dim]")
        loaded = cache[cache_key]
        if isinstance(loaded, str):
            problems.append(f"{entry.key}: {loaded}")
            continue
        try:
            window = truncate_to_stimulus(loaded, entry.onset, entry.duration_s)
            trial = Trial(window, entry.label, entry.video_id, entry.duration_s)
        except EmotionPipelineError as e:
            problems.append(f"{entry.key}: {e}")
            continue
        entries.append(DatasetEntry(trial, entry.label, entry.subject_id, entry.video_id))

    if problems:
        raise ManifestError(problems)

    provenance, seed = _dataset_provenance(manifest)
    return Dataset(tuple(entries), provenance=provenance, seed=seed)


def _load_imputed(path: Path, subject_id: str, impute_radius: int) -> Recording | str:
    """Parse, validate and impute one file; failures come back as a message."""
    try:
        rec = read_recording(path, subject_id=subject_id)
    except FileNotFoundError:
        return f"missing file {path}"
    except ParseError as e:
        return f"{path.name}: {e}"
    violations = validate_recording(rec)
    if violations:
        return f"{path.name}: {violations[0]}"
    try:
        return impute_recording(rec, impute_radius)
    except EmotionPipelineError as e:
        return f"{path.name}: {e}"


def save_trial_store(dataset: Dataset, out_dir: Path, provenance: dict | None = None) -> Path:
    """
    Write trials as .npy sample matrices plus a trials.json index.

    Returns:
        Path of the index file
    """
    trial_dir = out_dir / TRIAL_DIRNAME
    trial_dir.mkdir(parents=True, exist_ok=True)
    index = []
    for position, entry in enumerate(dataset.entries):
        trial = entry.item
        if not isinstance(trial, Trial):
            raise TypeError(f"entry {entry.key} is not a trial")
        filename = f"{position:05d}_{entry.subject_id}_{entry.video_id}.npy"
        np.save(trial_dir / filename, np.ascontiguousarray(trial.recording.samples))
        index.append(
            {
                "subject_id": entry.subject_id,
                "video_id": entry.video_id,
                "label": entry.label.name.lower(),
                "duration_s": trial.duration_s,
                "sample_rate_hz": trial.sample_rate_hz,
                "smoothed": trial.smoothed,
                "file": f"{TRIAL_DIRNAME}/{filename}",
            }
        )
    document = {
        "provenance": provenance or {},
        "source": dataset.provenance.value,
        "seed": dataset.seed,
        "trials": index,
    }
    index_path = out_dir / TRIAL_INDEX_FILENAME
    write_document(document, index_path, FileFormat.JSON)
    return index_path


def load_trial_store(path: Path) -> Dataset:
    """
    Read a trial store written by save_trial_store.

    Args:
        path: The store directory or its trials.json index
    """
    index_path = path / TRIAL_INDEX_FILENAME if path.is_dir() else path
    document, _ = load_document(index_path)
    base = index_path.parent
    entries = []
    for item in document.get("trials", []):
        samples = np.load(base / item["file"])
        rec = Recording.from_samples(samples, item["sample_rate_hz"], item["subject_id"])
        label = EmotionLabel.parse(item["label"])
        trial = Trial(rec, label, item["video_id"], item["duration_s"], item.get("smoothed", False))
        entries.append(DatasetEntry(trial, label, item["subject_id"], item["video_id"]))
    source = Provenance(document.get("source", Provenance.REAL.value))
    return Dataset(tuple(entries), provenance=source, seed=document.get("seed"))
