"""Recording files, session manifests and trial assembly."""

from eeg_emotion.ingest.dataset import build_dataset, load_trial_store, save_trial_store
from eeg_emotion.ingest.manifest import ManifestEntry, SessionManifest, load_manifest
from eeg_emotion.ingest.recording_file import (
    parse_recording_file,
    read_recording,
    serialize_recording,
)
from eeg_emotion.ingest.truncate import truncate_to_stimulus
from eeg_emotion.models import window_length

__all__ = [
    "ManifestEntry",
    "SessionManifest",
    "build_dataset",
    "load_manifest",
    "load_trial_store",
    "parse_recording_file",
    "read_recording",
    "save_trial_store",
    "serialize_recording",
    "truncate_to_stimulus",
    "window_length",
]
