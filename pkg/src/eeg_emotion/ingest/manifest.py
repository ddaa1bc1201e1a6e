"""Session manifests: which recording window belongs to which stimulus video.

A manifest is a JSON (or YAML) document::

    {
      "provenance": {...},
      "entries": [
        {"subject_id": "S01", "video_id": "V01", "label": "happy", "session": 1,
         "onset": 0, "duration_s": 30.0, "recording": "S01/V01.csv"}
      ]
    }

``label`` accepts a name (``happy``), a quadrant number (``1``) or ``Q1``.
Relative recording paths resolve against the manifest's directory.
"""

from pathlib import Path

from pydantic import BaseModel, Field, PrivateAttr, field_serializer, field_validator

from eeg_emotion.config import FileFormat, build_model
from eeg_emotion.core.loader import load_document
from eeg_emotion.core.writer import write_document
from eeg_emotion.models import EmotionLabel


class ManifestEntry(BaseModel):
    """One stimulus presentation inside a recording."""

    subject_id: str
    video_id: str
    label: EmotionLabel
    session: int | None = Field(default=None, ge=1)
    onset: int = Field(default=0, ge=0, description="First stimulus sample index")
    duration_s: float = Field(gt=0.0)
    recording: Path

    @field_validator("label", mode="before")
    @classmethod
    def _parse_label(cls, value):
        if isinstance(value, EmotionLabel):
            return value
        return EmotionLabel.parse(value)

    @field_serializer("label")
    def _dump_label(self, label: EmotionLabel) -> str:
        return label.name.lower()

    @field_serializer("recording")
    def _dump_recording(self, recording: Path) -> str:
        return recording.as_posix()

    @property
    def key(self) -> str:
        return f"{self.subject_id}/{self.video_id}"


class SessionManifest(BaseModel):
    """All trials of a dataset, in presentation order."""

    entries: list[ManifestEntry] = Field(default_factory=list)
    provenance: dict | None = None
    _base_dir: Path = PrivateAttr(default_factory=Path.cwd)

    @property
    def base_dir(self) -> Path:
        return self._base_dir

    def with_base_dir(self, base_dir: Path) -> "SessionManifest":
        self._base_dir = base_dir
        return self

    def resolve(self, entry: ManifestEntry) -> Path:
        """Absolute path of an entry's recording file."""
        if entry.recording.is_absolute():
            return entry.recording
        return self._base_dir / entry.recording

    def __len__(self) -> int:
        return len(self.entries)


def load_manifest(path: Path) -> SessionManifest:
    """
    Load a session manifest from JSON or YAML.

    Raises:
        FileNotFoundError: If the manifest doesn't exist
        ParseError: If it is not a readable document
        ConfigError: If an entry violates the schema
    """
    data, _ = load_document(path)
    manifest = build_model(SessionManifest, data)
    return manifest.with_base_dir(path.resolve().parent)


def save_manifest(manifest: SessionManifest, path: Path) -> None:
    """Write a manifest as JSON (or YAML when the suffix says so)."""
    data = {}
    if manifest.provenance is not None:
        data["provenance"] = manifest.provenance
    data["entries"] = [
        entry.model_dump(mode="json", exclude_none=True) for entry in manifest.entries
    ]
    file_format = FileFormat.YAML if path.suffix.lower() in (".yaml", ".yml") else FileFormat.JSON
    write_document(data, path, file_format)
