"""Window-based averaging for dropped samples."""

import numpy as np

from eeg_emotion.errors import ImputationError
from eeg_emotion.models import CHANNELS, Recording


def impute_missing(signal: np.ndarray, mask: np.ndarray, window_radius: int = 4) -> np.ndarray:
    """
    Replace missing samples by the mean of their nearest valid neighbours.

    Each gap takes the arithmetic mean of up to ``window_radius`` valid samples
    on each side (fewer near the edges). Valid samples are never changed and
    imputed values are never reused as neighbours, so the operation is idempotent.

    Args:
        signal: One channel; values under the mask are ignored
        mask: True where the sample is missing
        window_radius: Valid samples taken per side

    Returns:
        Complete signal as a new array

    Raises:
        ImputationError: If no sample of the channel is valid
    """
    values = np.asarray(signal, dtype=float)
    mask = np.asarray(mask, dtype=bool)
    if window_radius < 1:
        raise ImputationError(f"window_radius must be >= 1, got {window_radius}")
    valid = np.flatnonzero(~mask)
    if valid.size == 0:
        raise ImputationError("channel has no valid samples")

    result = values.copy()
    for gap in np.flatnonzero(mask):
        pos = int(np.searchsorted(valid, gap))
        neighbours = np.concatenate(
            (valid[max(0, pos - window_radius) : pos], valid[pos : pos + window_radius])
        )
        result[gap] = values[neighbours].mean()
    return result


def impute_recording(rec: Recording, window_radius: int = 4) -> Recording:
    """Impute every channel of a recording; the result has an all-false mask."""
    if rec.is_complete:
        return rec
    columns = []
    for ch in CHANNELS:
        try:
            columns.append(
                impute_missing(rec.samples[:, ch], rec.missing_mask[:, ch], window_radius)
            )
        except ImputationError as e:
            raise ImputationError(f"{rec.subject_id} {ch.name}: {e}") from e
    samples = np.column_stack(columns)
    return Recording(rec.subject_id, rec.sample_rate_hz, samples, np.zeros_like(samples, bool))
