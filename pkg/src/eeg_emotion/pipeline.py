"""Stage orchestration shared by the CLI commands.

Trials go through the preprocessing stages in order, then feature
extraction; the kernel comparison runs the full evaluation protocol once per
kernel family.
"""

from collections.abc import Callable

from rich.console import Console

from eeg_emotion.config import KERNEL_KINDS, PipelineConfig
from eeg_emotion.errors import AsymmetryDivisionError, UndefinedCorrelationError
from eeg_emotion.evaluation.protocol import run_evaluation
from eeg_emotion.evaluation.report import KernelRow
from eeg_emotion.features.extract import extract_features
from eeg_emotion.models import Dataset, DatasetEntry, Trial, validate_recording
from eeg_emotion.preprocess.savgol import smooth_trial

_TRIAL_STAGES: list[tuple[str, Callable[[Trial, PipelineConfig], Trial]]] = [
    ("savitzky-golay smoothing", lambda trial, config: smooth_trial(trial, config.savgol)),
]


def stage_provenance(command: str, config: PipelineConfig, dataset: Dataset | None = None) -> dict:
    """Provenance block for an output file: command, data source and resolved config."""
    provenance: dict = {"command": command}
    if dataset is not None:
        provenance["source"] = dataset.provenance.value
        provenance["seed"] = dataset.seed
    provenance["config"] = config.provenance()
    return provenance


def preprocess_trial(trial: Trial, config: PipelineConfig) -> Trial:
    """Run every preprocessing stage on one imputed trial."""
    for _, stage in _TRIAL_STAGES:
        trial = stage(trial, config)
    return trial


def featurize_dataset(
    trials: Dataset, config: PipelineConfig, console: Console | None = None
) -> tuple[Dataset, list[str]]:
    """
    Preprocess every trial and extract its feature vector.

    Trials whose features are undefined (a constant channel or a silent right
    hemisphere) are left out and returned as flagged ``subject/video`` keys.

    Returns:
        Tuple of (feature dataset, flagged trial messages)
    """
    if console:
        for label, _ in _TRIAL_STAGES:
            console.print(f"  [dim]→ {label}[/dim]")
        console.print("  [dim]→ feature extraction[/dim]")

    entries: list[DatasetEntry] = []
    flagged: list[str] = []
    for entry in trials:
        trial = preprocess_trial(entry.item, config)
        violations = validate_recording(trial.recording, preprocessed=True)
        if violations:
            flagged.append(f"{entry.subject_id}/{entry.video_id}: {violations[0]}")
            continue
        try:
            vector = extract_features(trial, config.welch, config.features)
        except (UndefinedCorrelationError, AsymmetryDivisionError) as e:
            flagged.append(f"{entry.subject_id}/{entry.video_id}: {e}")
            continue
        entries.append(DatasetEntry(vector, entry.label, entry.subject_id, entry.video_id))

    features = Dataset(
        tuple(entries), provenance=trials.provenance, seed=trials.seed, metadata=trials.metadata
    )
    return features, flagged


def compare_kernels(
    features: Dataset,
    config: PipelineConfig,
    kinds: tuple[str, ...] = KERNEL_KINDS,
    console: Console | None = None,
) -> list[KernelRow]:
    """Run the split / cross-validation / test protocol once per kernel family."""
    rows = []
    for kind in kinds:
        if console:
            console.print(f"  [dim]→ kernel {kind}[/dim]")
        kernel = config.kernel.model_copy(update={"kind": kind})
        _, report = run_evaluation(
            features, config.model_copy(update={"kernel": kernel}), console
        )
        rows.append(KernelRow.from_report(report))
    return rows
