"""Configuration models and the YAML config file for the EEG emotion pipeline."""

from enum import Enum
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from eeg_emotion.errors import ConfigError
from eeg_emotion.models import BANDS, N_FEATURES, EmotionLabel

CONFIG_FILENAME = ".eeg-emotion.yaml"

KernelKind = Literal["linear", "rbf", "gaussian", "polynomial"]

# row order of the kernel comparison table
KERNEL_KINDS: tuple[str, ...] = ("rbf", "linear", "gaussian", "polynomial")


class FileFormat(Enum):
    """Enum representing the format of a structured document."""

    JSON = "json"
    YAML = "yaml"


class SavGolSpec(BaseModel):
    """Savitzky-Golay smoothing window."""

    window_len: int = Field(default=11, ge=3, description="Odd window length in samples")
    poly_order: int = Field(default=3, ge=0, description="Fitted polynomial order")

    @model_validator(mode="after")
    def _check_window(self) -> "SavGolSpec":
        if self.window_len % 2 == 0:
            raise ValueError(f"window_len must be odd, got {self.window_len}")
        if self.poly_order >= self.window_len:
            raise ValueError(
                f"poly_order ({self.poly_order}) must be below window_len ({self.window_len})"
            )
        return self

    @property
    def half_width(self) -> int:
        return self.window_len // 2


class WelchSpec(BaseModel):
    """Welch PSD estimator settings."""

    segment_len: int = Field(default=512, ge=8, description="Segment length in samples")
    overlap: float = Field(default=0.5, ge=0.0, lt=1.0, description="Segment overlap fraction")
    taper: Literal["hann"] = "hann"
    stats_low_hz: float = Field(default=0.5, ge=0.0)
    stats_high_hz: float = Field(default=50.0, gt=0.0)

    @model_validator(mode="after")
    def _check_range(self) -> "WelchSpec":
        if self.stats_low_hz >= self.stats_high_hz:
            raise ValueError("stats_low_hz must be below stats_high_hz")
        return self

    @property
    def overlap_samples(self) -> int:
        return int(self.overlap * self.segment_len)

    @property
    def stats_range(self) -> tuple[float, float]:
        return (self.stats_low_hz, self.stats_high_hz)


class FeatureConfig(BaseModel):
    """How band powers are measured."""

    band_power_method: Literal["spectrum", "filtered"] = "spectrum"
    filter_order: int = Field(default=4, ge=1, le=10, description="Butterworth order per pass")


class KernelConfig(BaseModel):
    """SVM kernel family and its parameters."""

    kind: KernelKind = "polynomial"
    gamma: float = Field(default=1.0 / N_FEATURES, gt=0.0)
    sigma: float = Field(default=1.0, gt=0.0)
    degree: int = Field(default=2, ge=1)
    coef0: float = 1.0

    def describe(self) -> str:
        if self.kind == "linear":
            return "linear"
        if self.kind == "rbf":
            return f"rbf(gamma={self.gamma:g})"
        if self.kind == "gaussian":
            return f"gaussian(sigma={self.sigma:g})"
        return f"polynomial(gamma={self.gamma:g}, coef0={self.coef0:g}, degree={self.degree})"


class SMOConfig(BaseModel):
    """Sequential minimal optimization settings."""

    c: float = Field(default=1.0, gt=0.0, description="Box constraint (penalty) C")
    tol: float = Field(default=1e-3, gt=0.0, description="KKT tolerance")
    max_passes: int = Field(default=100, ge=1, description="Idle sweeps before stopping")
    max_sweeps: int = Field(default=10_000, ge=1, description="Hard cap on sweeps")
    alpha_eps: float = Field(default=1e-8, gt=0.0, description="Smallest accepted alpha step")


def _default_profiles() -> dict[str, list[float]]:
    # amplitudes in microvolts for delta, theta, alpha, beta, gamma
    return {
        "happy": [2.0, 2.0, 6.0, 2.0, 1.0],
        "angry": [2.0, 2.0, 2.0, 6.0, 2.0],
        "sad": [2.0, 6.0, 2.0, 2.0, 1.0],
        "relaxed": [6.0, 3.0, 4.0, 1.5, 1.0],
    }


def _default_asymmetry() -> dict[str, float]:
    # left-minus-right amplitude offset; sign follows valence
    return {"happy": 0.2, "angry": -0.2, "sad": -0.2, "relaxed": 0.2}


def _default_phase_lag() -> dict[str, float]:
    # right-hemisphere phase lag in radians
    return {"happy": 0.2, "angry": 1.0, "sad": 1.0, "relaxed": 0.2}


class SynthConfig(BaseModel):
    """Synthetic dataset shape and class profiles."""

    n_subjects: int = Field(default=40, ge=1)
    videos_per_quadrant: int = Field(default=4, ge=1)
    duration_s: float = Field(default=30.0, gt=0.0)
    fs: float = Field(default=256.0, gt=0.0)
    profiles: dict[str, list[float]] = Field(default_factory=_default_profiles)
    asymmetry: dict[str, float] = Field(default_factory=_default_asymmetry)
    phase_lag: dict[str, float] = Field(default_factory=_default_phase_lag)
    noise_std: float = Field(default=1.0, ge=0.0, description="1/f noise standard deviation")
    subject_gain_std: float = Field(default=0.15, ge=0.0)
    amplitude_jitter: float = Field(default=0.1, ge=0.0, lt=1.0)
    missing_rate: float = Field(default=0.001, ge=0.0, lt=0.1)
    precision: int = Field(default=4, ge=1, le=17, description="Decimals written per sample")
    seed: int = Field(default=0, ge=0, lt=2**32)

    @field_validator("profiles")
    @classmethod
    def _check_profiles(cls, value: dict[str, list[float]]) -> dict[str, list[float]]:
        for name, amplitudes in value.items():
            EmotionLabel.parse(name)
            if len(amplitudes) != len(BANDS):
                raise ValueError(f"profile {name}: need {len(BANDS)} band amplitudes")
            if any(a < 0 for a in amplitudes):
                raise ValueError(f"profile {name}: amplitudes must be >= 0")
        return value

    @model_validator(mode="after")
    def _check_labels(self) -> "SynthConfig":
        for table_name in ("profiles", "asymmetry", "phase_lag"):
            table = getattr(self, table_name)
            present = {EmotionLabel.parse(k) for k in table}
            missing = [label.name.lower() for label in EmotionLabel if label not in present]
            if missing:
                raise ValueError(f"{table_name} is missing labels: {', '.join(missing)}")
        for name, offset in self.asymmetry.items():
            if not -1.0 < offset < 1.0:
                raise ValueError(f"asymmetry {name}: offset must lie in (-1, 1)")
        return self

    def profile(self, label: EmotionLabel) -> list[float]:
        return _lookup(self.profiles, label)

    def asymmetry_for(self, label: EmotionLabel) -> float:
        return _lookup(self.asymmetry, label)

    def phase_lag_for(self, label: EmotionLabel) -> float:
        return _lookup(self.phase_lag, label)

    @property
    def n_trials(self) -> int:
        return self.n_subjects * len(EmotionLabel) * self.videos_per_quadrant


def _lookup(table: dict, label: EmotionLabel):
    for key, value in table.items():
        if EmotionLabel.parse(key) is label:
            return value
    raise ConfigError(f"no entry for label {label.name.lower()}")


class PipelineConfig(BaseModel):
    """Every knob of the end-to-end pipeline; defaults follow the published protocol."""

    data_dir: Path | None = None
    manifest: Path | None = None
    output_dir: Path | None = None
    impute_radius: int = Field(default=4, ge=1, description="Valid samples averaged per side")
    savgol: SavGolSpec = Field(default_factory=SavGolSpec)
    welch: WelchSpec = Field(default_factory=WelchSpec)
    features: FeatureConfig = Field(default_factory=FeatureConfig)
    kernel: KernelConfig = Field(default_factory=KernelConfig)
    smo: SMOConfig = Field(default_factory=SMOConfig)
    folds: int = Field(default=10, ge=2)
    split: float = Field(default=0.8, gt=0.0, lt=1.0)
    seed: int = Field(default=0, ge=0, lt=2**32)
    refit_full_train: bool = False
    verbose: bool = False
    synth: SynthConfig = Field(default_factory=SynthConfig)

    def provenance(self) -> dict:
        """Resolved settings embedded into every output file."""
        return self.model_dump(
            mode="json", exclude={"data_dir", "manifest", "output_dir", "verbose", "synth"}
        )


def build_model[M: BaseModel](model_cls: type[M], data: dict) -> M:
    """Validate ``data`` into ``model_cls``, turning pydantic errors into ConfigError."""
    try:
        return model_cls.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or model_cls.__name__
        raise ConfigError(f"{where}: {first['msg']}") from e


def get_config_path(target_dir: Path) -> Path:
    """Get the path to the config file in the target directory."""
    return target_dir / CONFIG_FILENAME


def load_config(path: Path | None = None) -> PipelineConfig:
    """
    Load a PipelineConfig from a YAML file.

    ``path`` may be the file itself or a directory holding .eeg-emotion.yaml.
    Returns the default config if the file doesn't exist.
    """
    if path is None:
        path = Path.cwd()
    config_path = get_config_path(path) if path.is_dir() else path
    if not config_path.exists():
        return PipelineConfig()
    with open(config_path, encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"{config_path.name}: expected a mapping at the top level")
    return build_model(PipelineConfig, data)


def apply_overrides(config: PipelineConfig, overrides: dict) -> PipelineConfig:
    """
    Merge dotted-key overrides (e.g. ``{"kernel.degree": 3}``) into a config.

    None values are skipped so unset CLI flags keep the config-file value.
    """
    data = config.model_dump()
    for dotted, value in overrides.items():
        if value is None:
            continue
        node = data
        *parents, leaf = dotted.split(".")
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = value
    return build_model(PipelineConfig, data)
