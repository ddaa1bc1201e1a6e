"""Versioned JSON model file for a trained MulticlassModel."""

from pathlib import Path

import numpy as np

from eeg_emotion.classifier.multiclass import MulticlassModel
from eeg_emotion.classifier.smo import BinaryModel
from eeg_emotion.config import FileFormat, KernelConfig, build_model
from eeg_emotion.core.loader import load_document
from eeg_emotion.core.writer import write_document
from eeg_emotion.errors import ParseError
from eeg_emotion.features.scaling import Standardizer
from eeg_emotion.models import EmotionLabel

MODEL_FORMAT = "eeg-emotion-model"
MODEL_VERSION = 1


def _binary_to_dict(model: BinaryModel) -> dict:
    positive, negative = model.pair
    return {
        "pair": [positive.name.lower(), negative.name.lower()],
        "bias": model.bias,
        "converged": model.converged,
        "max_violation": model.max_violation,
        "sweeps": model.n_sweeps,
        "support_indices": model.support_indices.tolist(),
        "dual_coef": model.dual_coef.tolist(),
        "support_vectors": model.support_vectors.tolist(),
    }


def _binary_from_dict(data: dict, kernel: KernelConfig, c: float) -> BinaryModel:
    pair = tuple(EmotionLabel.parse(name) for name in data["pair"])
    n_features = len(data["support_vectors"][0]) if data["support_vectors"] else 0
    return BinaryModel(
        support_vectors=np.asarray(data["support_vectors"], dtype=float).reshape(-1, n_features),
        dual_coef=np.asarray(data["dual_coef"], dtype=float),
        bias=float(data["bias"]),
        kernel=kernel,
        c=c,
        pair=pair,
        support_indices=np.asarray(data.get("support_indices", []), dtype=int),
        converged=bool(data.get("converged", True)),
        max_violation=float(data.get("max_violation", 0.0)),
        n_sweeps=int(data.get("sweeps", 0)),
    )


def model_to_dict(model: MulticlassModel, provenance: dict | None = None) -> dict:
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "provenance": provenance or {},
        "kernel": model.kernel.model_dump(mode="json"),
        "C": model.c,
        "seed": model.seed,
        "metadata": {k: v for k, v in model.metadata.items() if k != "provenance"},
        "standardizer": model.standardizer.to_dict(),
        "pairs": [_binary_to_dict(m) for m in model.models],
    }


def model_from_dict(data: dict) -> MulticlassModel:
    if data.get("format") != MODEL_FORMAT:
        raise ParseError(f"not an {MODEL_FORMAT} document")
    if data.get("version") != MODEL_VERSION:
        raise ParseError(f"unsupported model version {data.get('version')}")
    try:
        kernel = build_model(KernelConfig, data["kernel"])
        c = float(data["C"])
        models = tuple(_binary_from_dict(pair, kernel, c) for pair in data["pairs"])
        return MulticlassModel(
            models,
            Standardizer.from_dict(data["standardizer"]),
            kernel,
            c,
            int(data["seed"]),
            metadata={**data.get("metadata", {}), "provenance": data.get("provenance", {})},
        )
    except (KeyError, TypeError, IndexError) as e:
        raise ParseError(f"model file is missing or has a malformed field: {e}") from e


def save_model(model: MulticlassModel, path: Path, provenance: dict | None = None) -> None:
    """Write the model as JSON; floats use shortest round-trip repr."""
    write_document(model_to_dict(model, provenance), path, FileFormat.JSON)


def load_model(path: Path) -> MulticlassModel:
    """
    Read a model written by save_model.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ParseError: Wrong format tag, version or structure
    """
    data, _ = load_document(path)
    return model_from_dict(data)
