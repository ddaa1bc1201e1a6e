"""Module for loading structured documents (manifests, configs, models, reports)."""

import json
from pathlib import Path

import yaml

from eeg_emotion.config import FileFormat
from eeg_emotion.errors import ParseError


def detect_format(path: Path) -> FileFormat:
    """Map a file extension to its FileFormat."""
    suffix = path.suffix.lower()
    if suffix == ".json":
        return FileFormat.JSON
    if suffix in (".yaml", ".yml"):
        return FileFormat.YAML
    raise ParseError(f"Unsupported file format: {suffix}. Expected .json, .yaml, or .yml")


def load_document(path: Path) -> tuple[dict, FileFormat]:
    """
    Load a structured document from a JSON or YAML file.

    Args:
        path: Path to the document (.json, .yaml, or .yml)

    Returns:
        A tuple of (parsed_dict, FileFormat)

    Raises:
        FileNotFoundError: If the file doesn't exist
        ParseError: If the extension is unsupported, the content does not parse,
            or the top level is not a mapping
    """
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")

    file_format = detect_format(path)

    with open(path, encoding="utf-8") as f:
        try:
            if file_format == FileFormat.JSON:
                data = json.load(f)
            else:
                data = yaml.safe_load(f)
        except json.JSONDecodeError as e:
            raise ParseError(f"{path.name}: {e.msg}", line=e.lineno) from e
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            raise ParseError(f"{path.name}: invalid YAML", line=line) from e

    if not isinstance(data, dict):
        raise ParseError(f"{path.name}: expected a mapping at the top level")
    return data, file_format
