"""Main CLI entry point for the EEG emotion recognition pipeline."""

from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import typer
from rich.console import Console

from eeg_emotion.classifier.persistence import load_model, save_model
from eeg_emotion.config import (
    CONFIG_FILENAME,
    KERNEL_KINDS,
    PipelineConfig,
    apply_overrides,
    load_config,
)
from eeg_emotion.errors import EmotionPipelineError, MissingInputError
from eeg_emotion.evaluation.metrics import format_percent
from eeg_emotion.evaluation.protocol import evaluate_model, train_with_cv
from eeg_emotion.evaluation.report import write_cv_report, write_kernel_comparison, write_report
from eeg_emotion.features.matrix_file import read_feature_matrix, write_feature_matrix
from eeg_emotion.generators.synth import generate_dataset
from eeg_emotion.ingest.dataset import (
    TRIAL_INDEX_FILENAME,
    build_dataset,
    load_trial_store,
    save_trial_store,
)
from eeg_emotion.ingest.manifest import load_manifest
from eeg_emotion.pipeline import compare_kernels, featurize_dataset, stage_provenance

app = typer.Typer(
    name="eeg-emotion",
    help="Four-class EEG emotion recognition with multi-kernel SVMs",
)
console = Console()
err_console = Console(stderr=True, soft_wrap=True, markup=False, highlight=False)

FEATURES_FILENAME = "features.csv"
MODEL_FILENAME = "model.json"
DEFAULT_OUT = Path("out")

ConfigOption = typer.Option(
    None, "--config", help=f"YAML config file (default: ./{CONFIG_FILENAME} if present)"
)
OutOption = typer.Option(DEFAULT_OUT, "--out", "-o", help="Output directory")
SeedOption = typer.Option(None, "--seed", help="Root seed for every random choice")
VerboseOption = typer.Option(False, "--verbose", "-v", help="Print per-stage detail")


@contextmanager
def reporting_errors() -> Iterator[None]:
    """Turn pipeline failures into one ``error[<code>]: message`` line and exit code 1."""
    try:
        yield
    except EmotionPipelineError as e:
        _fail(e.code, str(e))
    except FileNotFoundError as e:
        _fail(MissingInputError.code, str(e))


def _fail(code: str, message: str) -> None:
    err_console.print(f"error[{code}]: {' '.join(message.split())}")
    raise typer.Exit(1)


def require(path: Path, what: str) -> Path:
    if not path.exists():
        raise MissingInputError(f"{what} not found: {path}")
    return path


def resolve_config(config_path: Path | None, overrides: dict) -> PipelineConfig:
    """
    Resolve settings with priority: CLI flag > config file > defaults.

    Args:
        config_path: Explicit --config file, or None to look for
            .eeg-emotion.yaml in the working directory
        overrides: Dotted keys of flags the user actually set
    """
    if config_path is not None:
        require(config_path, "config file")
    return apply_overrides(load_config(config_path), overrides)


def stage_console(config: PipelineConfig) -> Console | None:
    return console if config.verbose else None


@app.command()
def synth(
    out: Path = typer.Option(Path("data"), "--out", "-o", help="Dataset directory"),
    subjects: int = typer.Option(None, "--subjects", help="Number of subjects (default 40)"),
    videos_per_quadrant: int = typer.Option(
        None, "--videos-per-quadrant", help="Videos per emotion and subject (default 4)"
    ),
    duration: float = typer.Option(None, "--duration", help="Seconds per video (default 30)"),
    noise_std: float = typer.Option(None, "--noise-std", help="1/f noise level"),
    missing_rate: float = typer.Option(None, "--missing-rate", help="Sample dropout rate"),
    seed: int = SeedOption,
    config_path: Path = ConfigOption,
    verbose: bool = VerboseOption,
) -> None:
    """Generate a seeded synthetic recording tree with its manifest."""
    with reporting_errors():
        config = resolve_config(
            config_path,
            {
                "synth.n_subjects": subjects,
                "synth.videos_per_quadrant": videos_per_quadrant,
                "synth.duration_s": duration,
                "synth.noise_std": noise_std,
                "synth.missing_rate": missing_rate,
                "synth.seed": seed,
                "verbose": verbose or None,
            },
        )
        cfg = config.synth
        with console.status(f"[bold yellow]Generating {cfg.n_trials} synthetic recordings..."):
            manifest_path = generate_dataset(cfg, out, console=stage_console(config))
    console.print(
        f"[bold green]✓[/bold green] {cfg.n_trials} recordings, manifest: {manifest_path}"
    )


@app.command()
def ingest(
    manifest: Path = typer.Option(..., "--manifest", "-m", help="Session manifest (.json/.yaml)"),
    out: Path = OutOption,
    config_path: Path = ConfigOption,
    verbose: bool = VerboseOption,
) -> None:
    """Parse, validate, impute and truncate every manifest entry into a trial store."""
    with reporting_errors():
        config = resolve_config(config_path, {"verbose": verbose or None})
        session = load_manifest(require(manifest, "manifest"))
        with console.status(f"[bold yellow]Loading {len(session)} trials..."):
            dataset = build_dataset(session, config.impute_radius, console=stage_console(config))
        index = save_trial_store(dataset, out, stage_provenance("ingest", config, dataset))
    console.print(f"[bold green]✓[/bold green] {len(dataset)} trials stored: {index}")


@app.command()
def features(
    trials: Path = typer.Option(
        None, "--trials", help=f"Trial store directory or {TRIAL_INDEX_FILENAME} (default: --out)"
    ),
    out: Path = OutOption,
    sg_window: int = typer.Option(None, "--sg-window", help="Savitzky-Golay window (odd)"),
    sg_order: int = typer.Option(None, "--sg-order", help="Savitzky-Golay polynomial order"),
    config_path: Path = ConfigOption,
    verbose: bool = VerboseOption,
) -> None:
    """Smooth every stored trial and write the 34-feature matrix."""
    with reporting_errors():
        config = resolve_config(
            config_path,
            {
                "savgol.window_len": sg_window,
                "savgol.poly_order": sg_order,
                "verbose": verbose or None,
            },
        )
        store = load_trial_store(require(trials or out, "trial store"))
        with console.status(f"[bold yellow]Extracting features from {len(store)} trials..."):
            matrix, flagged = featurize_dataset(store, config, console=stage_console(config))
        for message in flagged:
            console.print(f"[bold yellow]![/bold yellow] dropped {message}")
        path = out / FEATURES_FILENAME
        write_feature_matrix(matrix, path, stage_provenance("features", config, matrix))
    console.print(f"[bold green]✓[/bold green] {len(matrix)} feature vectors: {path}")


def _kernel_overrides(
    kernel: str | None,
    c: float | None,
    degree: int | None,
    gamma: float | None,
    sigma: float | None,
) -> dict:
    return {
        "kernel.kind": kernel,
        "smo.c": c,
        "kernel.degree": degree,
        "kernel.gamma": gamma,
        "kernel.sigma": sigma,
    }


KernelOption = typer.Option(None, "--kernel", help=f"One of {', '.join(KERNEL_KINDS)}")
COption = typer.Option(None, "--c", help="SVM penalty C (default 1.0)")
DegreeOption = typer.Option(None, "--degree", help="Polynomial degree (default 2)")
GammaOption = typer.Option(None, "--gamma", help="RBF / polynomial gamma (default 1/34)")
SigmaOption = typer.Option(None, "--sigma", help="Gaussian width (default 1.0)")
FoldsOption = typer.Option(None, "--folds", help="Cross-validation folds (default 10)")
SplitOption = typer.Option(None, "--split", help="Training fraction (default 0.8)")
FeaturesOption = typer.Option(
    None, "--features", help=f"Feature matrix CSV (default: <out>/{FEATURES_FILENAME})"
)


@app.command()
def train(
    features_path: Path = FeaturesOption,
    out: Path = OutOption,
    kernel: str = KernelOption,
    c: float = COption,
    degree: int = DegreeOption,
    gamma: float = GammaOption,
    sigma: float = SigmaOption,
    folds: int = FoldsOption,
    split: float = SplitOption,
    seed: int = SeedOption,
    refit_full_train: bool = typer.Option(
        None, "--refit-full-train", help="Test with a model refit on the whole training part"
    ),
    config_path: Path = ConfigOption,
    verbose: bool = VerboseOption,
) -> None:
    """Cross-validate on the training split and save the kept model."""
    with reporting_errors():
        config = resolve_config(
            config_path,
            {
                **_kernel_overrides(kernel, c, degree, gamma, sigma),
                "folds": folds,
                "split": split,
                "seed": seed,
                "refit_full_train": refit_full_train or None,
                "verbose": verbose or None,
            },
        )
        dataset = read_feature_matrix(require(features_path or out / FEATURES_FILENAME, "features"))
        with console.status(f"[bold yellow]Training {config.kernel.describe()}..."):
            model, cv = train_with_cv(dataset, config, console=stage_console(config))
        provenance = stage_provenance("train", config, dataset)
        save_model(model, out / MODEL_FILENAME, provenance)
        write_cv_report(model, out, provenance)

    for binary in model.unconverged:
        console.print(
            f"[bold yellow]![/bold yellow] {binary.pair_name} stopped before convergence "
            f"(max violation {binary.max_violation:.3g})"
        )
    console.print(
        f"[bold green]✓[/bold green] mean CV accuracy {format_percent(cv.mean_accuracy)}, "
        f"best fold {cv.best_fold} ({format_percent(cv.best_accuracy)}): {out / MODEL_FILENAME}"
    )


@app.command()
def evaluate(
    model_path: Path = typer.Option(
        None, "--model", help=f"Model file (default: <out>/{MODEL_FILENAME})"
    ),
    features_path: Path = FeaturesOption,
    out: Path = OutOption,
) -> None:
    """Score the saved model on the held-out test split."""
    with reporting_errors():
        model = load_model(require(model_path or out / MODEL_FILENAME, "model"))
        dataset = read_feature_matrix(require(features_path or out / FEATURES_FILENAME, "features"))
        report = evaluate_model(model, dataset)
        provenance = dict(model.metadata.get("provenance", {}))
        provenance["command"] = "evaluate"
        write_report(report, out, provenance)

    for label in report.scores.undefined_precision:
        console.print(
            f"[bold yellow]![/bold yellow] {label.display_name} was never predicted; "
            "its precision is reported as 0"
        )
    console.print(
        f"[bold green]✓[/bold green] test accuracy {format_percent(report.test_accuracy)} "
        f"on {report.n_test} trials: {out}"
    )


@app.command()
def report(
    features_path: Path = FeaturesOption,
    out: Path = OutOption,
    c: float = COption,
    degree: int = DegreeOption,
    gamma: float = GammaOption,
    sigma: float = SigmaOption,
    folds: int = FoldsOption,
    split: float = SplitOption,
    seed: int = SeedOption,
    refit_full_train: bool = typer.Option(None, "--refit-full-train"),
    with_reference: bool = typer.Option(
        False, "--with-reference", help="Append the published reference accuracies"
    ),
    config_path: Path = ConfigOption,
    verbose: bool = VerboseOption,
) -> None:
    """Compare the rbf, linear, gaussian and polynomial kernels under one protocol."""
    with reporting_errors():
        config = resolve_config(
            config_path,
            {
                **_kernel_overrides(None, c, degree, gamma, sigma),
                "folds": folds,
                "split": split,
                "seed": seed,
                "refit_full_train": refit_full_train or None,
                "verbose": verbose or None,
            },
        )
        dataset = read_feature_matrix(require(features_path or out / FEATURES_FILENAME, "features"))
        with console.status("[bold yellow]Comparing kernels..."):
            rows = compare_kernels(dataset, config, console=stage_console(config))
        provenance = stage_provenance("report", config, dataset)
        paths = write_kernel_comparison(
            rows, out, provenance, config.folds, config.seed, with_reference
        )

    for row in rows:
        console.print(
            f"  {row.kernel.kind:<11} {format_percent(row.mean_cv_accuracy):>7}  "
            f"{format_percent(row.best_fold_accuracy):>7}  {format_percent(row.test_accuracy):>7}"
        )
    console.print(f"[bold green]✓[/bold green] kernel comparison: {paths[0]}")


if __name__ == "__main__":
    app()
