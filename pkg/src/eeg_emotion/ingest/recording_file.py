"""The muse-eeg v1 recording text format.

    # muse-eeg v1, rate=256
    0,12.5,-3.25,4.0,1.75
    1,12.0,,4.5,1.5

One row per sample: a strictly increasing integer index followed by the TP9,
AF7, AF8 and TP10 values in microvolts. An empty or non-numeric field marks a
missing sample. Decimal numerals, ``.`` radix, ``,`` delimiter, LF line endings.
"""

import io
import re
from pathlib import Path

import numpy as np
import pandas as pd

from eeg_emotion.errors import ParseError
from eeg_emotion.models import CHANNELS, Recording

HEADER_PATTERN = re.compile(r"^# muse-eeg v1, rate=(\d+(?:\.\d+)?)$")
N_FIELDS = 1 + len(CHANNELS)
COLUMNS = ["index", *(channel.name for channel in CHANNELS)]
LINE_PATTERN = re.compile(r"Expected (\d+) fields in line (\d+), saw (\d+)")


def _format_rate(rate: float) -> str:
    return str(int(rate)) if float(rate).is_integer() else repr(float(rate))


def _read_rows(body: str) -> pd.DataFrame:
    try:
        return pd.read_csv(
            io.StringIO(body),
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
        )
    except pd.errors.ParserError as e:
        found = LINE_PATTERN.search(str(e))
        if found is None:
            raise ParseError(f"expected {N_FIELDS} fields") from e
        width, line, seen = (int(group) for group in found.groups())
        # The first row sets the width pandas expects.
        if width != N_FIELDS:
            line, seen = 1, width
        raise ParseError(f"expected {N_FIELDS} fields, got {seen}", line=line + 1) from e


def parse_recording_file(data: bytes | str, subject_id: str = "S00") -> Recording:
    """
    Parse a muse-eeg v1 recording.

    Args:
        data: Raw file content
        subject_id: Subject the recording belongs to

    Returns:
        Recording whose missing_mask flags every empty or non-numeric cell

    Raises:
        ParseError: Malformed header, wrong column count, bad or
            non-increasing sample index; the message names the line number
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    first, _, body = text.partition("\n")
    if not first and not body:
        raise ParseError("empty recording file", line=1)

    header = HEADER_PATTERN.match(first.rstrip("\r"))
    if header is None:
        raise ParseError(f"expected '# muse-eeg v1, rate=<hz>' header, got {first!r}", line=1)
    rate = float(header.group(1))
    if rate <= 0:
        raise ParseError("sample rate must be positive", line=1)
    if not body.strip("\r\n"):
        raise ParseError("recording has no samples", line=2)

    frame = _read_rows(body.rstrip("\r\n"))

    # Rows shorter than the widest come back padded with NaN; empty fields stay "".
    counts = frame.notna().sum(axis=1).to_numpy()
    wrong = counts != N_FIELDS
    if wrong.any():
        row = int(np.argmax(wrong))
        raise ParseError(f"expected {N_FIELDS} fields, got {counts[row]}", line=row + 2)
    frame.columns = COLUMNS

    index = pd.to_numeric(frame["index"], errors="coerce").to_numpy(dtype=float)
    invalid = ~np.isfinite(index) | (index != np.round(index)) | (index < 0)
    if invalid.any():
        row = int(np.argmax(invalid))
        raise ParseError(f"invalid sample index {frame['index'].iloc[row]!r}", line=row + 2)
    step = np.diff(index)
    if (step <= 0).any():
        row = int(np.argmin(step > 0))
        raise ParseError(
            f"non-monotonic sample index {int(index[row + 1])} after {int(index[row])}",
            line=row + 3,
        )

    channels = frame[list(COLUMNS[1:])].apply(pd.to_numeric, errors="coerce")
    samples = channels.to_numpy(dtype=float)
    samples[~np.isfinite(samples)] = np.nan
    return Recording(subject_id, rate, samples, np.isnan(samples))


def read_recording(path: Path, subject_id: str = "S00") -> Recording:
    """Read and parse a recording file from disk."""
    if not path.exists():
        raise FileNotFoundError(f"Recording file not found: {path}")
    return parse_recording_file(path.read_bytes(), subject_id=subject_id)


def serialize_recording(rec: Recording, precision: int | None = 4) -> str:
    """
    Render a Recording in the muse-eeg v1 format.

    Args:
        rec: Recording to write; masked cells become empty fields
        precision: Decimal places per value, or None for the shortest
            round-trip representation

    Returns:
        File content ending with a newline
    """
    if precision is None:

        def fmt(v: float) -> str:
            return repr(float(v))

    else:
        spec = f".{precision}f"

        def fmt(v: float) -> str:
            return format(v, spec)

    lines = [f"# muse-eeg v1, rate={_format_rate(rec.sample_rate_hz)}"]
    mask = rec.missing_mask
    for index, (values, missing) in enumerate(zip(rec.samples.tolist(), mask.tolist())):
        cells = ["" if gap else fmt(v) for v, gap in zip(values, missing)]
        lines.append(f"{index}," + ",".join(cells))
    return "\n".join(lines) + "\n"
