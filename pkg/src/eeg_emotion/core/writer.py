"""Module for writing structured documents and provenance-stamped text files."""

import json
from pathlib import Path

import yaml

from eeg_emotion.config import FileFormat


class NoAliasDumper(yaml.SafeDumper):
    """
    Custom YAML dumper that disables alias/anchor generation.

    Manifests are meant to be edited by hand, so every entry is written out in full.
    """

    def ignore_aliases(self, data):
        """Always return True to disable alias generation."""
        return True


def write_document(data: dict, path: Path, format: FileFormat = FileFormat.JSON) -> None:
    """
    Write a structured document to a JSON or YAML file.

    Key order is preserved so identical inputs give byte-identical files.

    Args:
        data: Document as a JSON-compatible dictionary
        path: Path where the file should be written
        format: FileFormat indicating whether to write JSON or YAML

    Raises:
        ValueError: If an unsupported FileFormat is provided
    """
    path.parent.mkdir(parents=True, exist_ok=True)

    if format == FileFormat.JSON:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(data, f, indent=2, ensure_ascii=False, allow_nan=False)
            f.write("\n")

    elif format == FileFormat.YAML:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            yaml.dump(
                data,
                f,
                Dumper=NoAliasDumper,
                default_flow_style=False,
                allow_unicode=True,
                sort_keys=False,
                indent=2,
            )

    else:
        raise ValueError(f"Unsupported file format: {format}")


def provenance_line(provenance: dict) -> str:
    """Single comment line carrying the resolved config, for text outputs."""
    return "# provenance: " + json.dumps(provenance, separators=(",", ":"), sort_keys=True)


def write_text(path: Path, content: str, provenance: dict | None = None) -> None:
    """Write UTF-8 text with LF endings, optionally prefixed by a provenance line."""
    path.parent.mkdir(parents=True, exist_ok=True)
    if provenance is not None:
        content = provenance_line(provenance) + "\n" + content
    if not content.endswith("\n"):
        content += "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(content)
