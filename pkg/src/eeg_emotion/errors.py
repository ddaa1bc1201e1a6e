"""Exception hierarchy for the EEG emotion pipeline.

Every error carries a short machine code so the CLI can report failures as a
single ``error[<code>]: <message>`` line.
"""


class EmotionPipelineError(ValueError):
    """Base class for all pipeline errors."""

    code = "pipeline"


class ConfigError(EmotionPipelineError):
    """Invalid configuration value (filter spec, band edges, kernel params...)."""

    code = "config"


class ParseError(EmotionPipelineError):
    """Malformed recording or document file."""

    code = "parse"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RangeError(EmotionPipelineError):
    """A window, band or bin selection falls outside the available data."""

    code = "range"


class LengthError(EmotionPipelineError):
    """A signal is too short for the requested operation."""

    code = "length"


class DimensionError(EmotionPipelineError):
    """Vectors or matrices with incompatible shapes."""

    code = "dimension"


class ImputationError(EmotionPipelineError):
    """A channel has no valid sample to impute from."""

    code = "imputation"


class UndefinedCorrelationError(EmotionPipelineError):
    """Pearson correlation requested for a constant series."""

    code = "correlation"


class AsymmetryDivisionError(EmotionPipelineError):
    """RASM requested with zero right-hemisphere power."""

    code = "division"


class TrainingError(EmotionPipelineError):
    """SVM training could not start or failed inside a cross-validation fold."""

    code = "training"

    def __init__(self, message: str, fold: int | None = None):
        self.fold = fold
        if fold is not None:
            message = f"fold {fold}: {message}"
        super().__init__(message)


class ManifestError(EmotionPipelineError):
    """One or more manifest entries could not be turned into trials."""

    code = "manifest"

    def __init__(self, problems: list[str]):
        self.problems = problems
        noun = "entry" if len(problems) == 1 else "entries"
        super().__init__(f"{len(problems)} bad manifest {noun}: " + "; ".join(problems))


class MissingInputError(EmotionPipelineError):
    """An input file named on the command line (or its default) does not exist."""

    code = "missing-input"
