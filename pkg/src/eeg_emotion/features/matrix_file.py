"""Feature matrix CSV: one row per trial, provenance comment on the first line."""

import json
from pathlib import Path

import pandas as pd

from eeg_emotion.core.writer import provenance_line
from eeg_emotion.errors import ParseError
from eeg_emotion.models import (
    FEATURE_NAMES,
    Dataset,
    DatasetEntry,
    EmotionLabel,
    FeatureVector,
    Provenance,
)

ID_COLUMNS = ["subject_id", "video_id", "label"]
PROVENANCE_PREFIX = "# provenance: "


def feature_frame(dataset: Dataset) -> pd.DataFrame:
    """DataFrame with id columns followed by the 34 named features."""
    frame = pd.DataFrame(dataset.feature_matrix(), columns=list(FEATURE_NAMES))
    frame.insert(0, "label", [e.label.name.lower() for e in dataset.entries])
    frame.insert(0, "video_id", [e.video_id for e in dataset.entries])
    frame.insert(0, "subject_id", [e.subject_id for e in dataset.entries])
    return frame


def write_feature_matrix(dataset: Dataset, path: Path, provenance: dict | None = None) -> None:
    """Write the matrix with shortest round-trip floats and LF line endings."""
    path.parent.mkdir(parents=True, exist_ok=True)
    header = dict(provenance or {})
    header.setdefault("source", dataset.provenance.value)
    header.setdefault("seed", dataset.seed)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(provenance_line(header) + "\n")
        feature_frame(dataset).to_csv(f, index=False, lineterminator="\n")


def read_provenance(path: Path) -> dict:
    """Provenance dict from the first line, or {} when absent."""
    with open(path, encoding="utf-8") as f:
        first = f.readline().rstrip("\n")
    if not first.startswith(PROVENANCE_PREFIX):
        return {}
    return json.loads(first[len(PROVENANCE_PREFIX) :])


def read_feature_matrix(path: Path) -> Dataset:
    """
    Load a feature matrix written by write_feature_matrix.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ParseError: If columns are missing or out of order
    """
    if not path.exists():
        raise FileNotFoundError(f"Feature matrix not found: {path}")
    provenance = read_provenance(path)
    frame = pd.read_csv(
        path,
        skiprows=1 if provenance else 0,
        dtype={"subject_id": str, "video_id": str, "label": str},
        float_precision="round_trip",
    )
    expected = ID_COLUMNS + list(FEATURE_NAMES)
    if list(frame.columns) != expected:
        raise ParseError(f"{path.name}: columns do not match the feature layout")

    values = frame[list(FEATURE_NAMES)].to_numpy(dtype=float)
    entries = tuple(
        DatasetEntry(FeatureVector(row), EmotionLabel.parse(label), str(subject), str(video))
        for row, label, subject, video in zip(
            values, frame["label"], frame["subject_id"], frame["video_id"], strict=True
        )
    )
    source = Provenance(provenance.get("source", Provenance.REAL.value))
    return Dataset(entries, provenance=source, seed=provenance.get("seed"), metadata=provenance)
