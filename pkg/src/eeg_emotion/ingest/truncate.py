"""Cutting recordings down to the stimulus window."""

from eeg_emotion.errors import RangeError
from eeg_emotion.models import Recording, window_length


def truncate_to_stimulus(rec: Recording, onset: int, duration_s: float) -> Recording:
    """
    Keep exactly floor(duration_s * fs) samples starting at ``onset``.

    Args:
        rec: Source recording
        onset: Index of the first stimulus sample
        duration_s: Stimulus (video) duration in seconds

    Returns:
        A new Recording; the window length depends only on duration_s and fs

    Raises:
        RangeError: If the window does not fit inside the recording
    """
    length = window_length(duration_s, rec.sample_rate_hz)
    if onset < 0 or length < 1:
        raise RangeError(f"invalid window: onset {onset}, {length} samples")
    end = onset + length
    if end > rec.n_samples:
        raise RangeError(
            f"window {onset}..{end - 1} exceeds recording of {rec.n_samples} samples"
        )
    return Recording(
        rec.subject_id,
        rec.sample_rate_hz,
        rec.samples[onset:end],
        rec.missing_mask[onset:end],
    )
