"""
📁 File: src/interfaces/cli/experiment.py
Layer: Interfaces (CLI)
Purpose: Experiment configuration model and flat key = value loader
Depends on: pydantic, Layers 1-3 models
Used by: main, runner, figures

Config file format:
    # comment
    scheme = kljn
    detector = nd-i
    n_range = 50:75:5
    beta = 1.315

Unknown keys are rejected with a ConfigurationError naming the key; every
physical and threshold invariant is re-checked at load time.
"""

from enum import Enum
from pathlib import Path
from typing import Any, Optional, Self

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.layer1_kljn.models import CurrentThresholds, DetectorKind, KljnConfig, VoltageThresholds
from src.layer1_kljn.theory import ndii_thresholds
from src.layer2_thermod.models import ThermodConfig, ThermodThreshold
from src.layer3_simulation.models import NdiPolicy, SampleMode, StopRule
from src.shared.config import get_settings
from src.shared.errors import ConfigurationError, OutputError

settings = get_settings()


class Scheme(str, Enum):
    KLJN = "kljn"
    THERMOD = "thermod"


class ThresholdSource(str, Enum):
    """Where the decision thresholds of a run come from."""

    EXPLICIT = "explicit"  # beta/kappa/eta/xi/chi keys
    OPTIMIZE = "optimize"  # grid search per N (KLJN only)
    UNIFORM = "uniform"  # analytic seeds / uniform-error chi


class OutputFormat(str, Enum):
    CSV = "csv"
    SVG = "svg"  # CSV plus a plot next to it


class FigureId(str, Enum):
    FIG5 = "fig5"
    FIG6 = "fig6"
    FIG7 = "fig7"
    FIG8 = "fig8"
    FIG9 = "fig9"
    FIG10 = "fig10"


def parse_n_values(text: str) -> list[int]:
    """
    Parse "50,100,200" or an inclusive range "50:400:25".

    Raises:
        ConfigurationError: On malformed input
    """
    try:
        if ":" in text:
            start, stop, step = (int(part) for part in text.split(":"))
            if step <= 0:
                raise ValueError("step must be positive")
            return list(range(start, stop + 1, step))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"Cannot parse sample counts '{text}': {exc}", config_key="n_range") from exc


class ExperimentConfig(BaseModel):
    """One experiment: scheme, parameters, thresholds, simulation controls, output."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    scheme: Scheme = Scheme.KLJN
    detector: DetectorKind = DetectorKind.CLASSICAL_VOLTAGE
    alpha: float = 10.0
    delta: float = 0.1
    n_samples: int = 100
    n_range: Optional[list[int]] = None

    thresholds: Optional[ThresholdSource] = None
    beta: Optional[float] = None
    kappa: Optional[float] = None
    eta: Optional[float] = None
    xi: Optional[float] = None
    chi: Optional[float] = None
    step: float = Field(default_factory=lambda: settings.FINE_STEP)

    mode: SampleMode = SampleMode.GAUSSIAN_FIT
    max_bits: int = Field(default_factory=lambda: settings.DEFAULT_MAX_BITS)
    min_errors: int = Field(default_factory=lambda: settings.DEFAULT_MIN_ERRORS)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
    chunk_size: int = Field(default_factory=lambda: settings.CHUNK_SIZE)
    workers: int = Field(default_factory=lambda: settings.WORKERS)
    ndi_policy: NdiPolicy = NdiPolicy.DISCARD
    simulate: bool = False

    output: Optional[str] = None
    format: OutputFormat = OutputFormat.CSV

    @field_validator("n_range", mode="before")
    @classmethod
    def parse_range(cls, value: Any) -> Any:
        if isinstance(value, str):
            return parse_n_values(value)
        return value

    @model_validator(mode="after")
    def check_invariants(self) -> Self:
        """Re-validate every referenced domain invariant."""
        for n in self.n_values:
            if self.scheme == Scheme.KLJN:
                KljnConfig(alpha=self.alpha, n_samples=n)
            else:
                ThermodConfig(alpha=self.alpha, delta=self.delta, n_samples=n)
        if self.resolved_thresholds == ThresholdSource.EXPLICIT:
            self.explicit_thresholds()
        elif self.resolved_thresholds == ThresholdSource.OPTIMIZE and self.scheme == Scheme.THERMOD:
            raise ConfigurationError(
                "TherMod thresholds are 'explicit' or 'uniform'", config_key="thresholds"
            )
        if self.chunk_size < 1 or self.workers < 1:
            key = "chunk_size" if self.chunk_size < 1 else "workers"
            raise ConfigurationError(f"'{key}' must be at least 1", config_key=key)
        StopRule(max_bits=self.max_bits, min_errors=self.min_errors)
        return self

    @property
    def n_values(self) -> list[int]:
        return self.n_range or [self.n_samples]

    @property
    def resolved_thresholds(self) -> ThresholdSource:
        """Explicit when any threshold key is set, otherwise the analytic default."""
        if self.thresholds is not None:
            return self.thresholds
        given = (self.beta, self.kappa, self.eta, self.xi, self.chi)
        return ThresholdSource.EXPLICIT if any(v is not None for v in given) else ThresholdSource.UNIFORM

    @property
    def stop_rule(self) -> StopRule:
        return StopRule(max_bits=self.max_bits, min_errors=self.min_errors)

    def _require(self, *keys: str) -> None:
        for key in keys:
            if getattr(self, key) is None:
                raise ConfigurationError(
                    f"Detector '{self.detector.value}' with explicit thresholds needs '{key}'",
                    config_key=key,
                )

    def explicit_thresholds(
        self,
    ) -> tuple[Optional[VoltageThresholds], Optional[CurrentThresholds], Optional[ThermodThreshold]]:
        """
        Threshold objects from the explicit keys, checked against alpha (and delta).

        ND-II needs only kappa and xi; the unused lower thresholds get seeds.

        Raises:
            ConfigurationError: If a required key is missing
            ThresholdError: If a value is infeasible
        """
        if self.scheme == Scheme.THERMOD:
            self._require("chi")
            th = ThermodThreshold(chi=self.chi).check(
                ThermodConfig(alpha=self.alpha, delta=self.delta, n_samples=self.n_values[0])
            )
            return None, None, th
        if self.detector == DetectorKind.NEW_DETECTOR_II:
            self._require("kappa", "xi")
            vth, cth = ndii_thresholds(self.alpha, self.kappa, self.xi)
            return vth, cth, None
        vth = cth = None
        if self.detector in (DetectorKind.CLASSICAL_VOLTAGE, DetectorKind.NEW_DETECTOR_I):
            self._require("beta", "kappa")
            vth = VoltageThresholds(beta=self.beta, kappa=self.kappa).check(self.alpha)
        if self.detector in (DetectorKind.CLASSICAL_CURRENT, DetectorKind.NEW_DETECTOR_I):
            self._require("eta", "xi")
            cth = CurrentThresholds(eta=self.eta, xi=self.xi).check(self.alpha)
        return vth, cth, None

    def metadata(self) -> dict[str, Any]:
        """Resolved configuration as flat key/value pairs for result-file headers."""
        data = self.model_dump(mode="json")
        data["n_range"] = ",".join(str(n) for n in self.n_values)
        data["thresholds"] = self.resolved_thresholds.value
        return {key: value for key, value in data.items() if value is not None}


def read_config_file(path: str | Path) -> dict[str, str]:
    """
    Parse a flat key = value file; '#' starts a comment.

    Raises:
        OutputError: If the file cannot be read
        ConfigurationError: On a malformed line or an unknown key
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OutputError(str(path), exc.strerror or str(exc)) from exc

    known = set(ExperimentConfig.model_fields)
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigurationError(
                f"{path}:{lineno}: expected 'key = value'", details={"line": raw}
            )
        if key not in known:
            raise ConfigurationError(f"Unknown configuration key '{key}'", config_key=key)
        values[key] = value.strip()
    return values


def build_config(*layers: dict[str, Any]) -> ExperimentConfig:
    """
    Merge raw key/value layers (later wins, None skipped) into a validated config.

    Raises:
        ConfigurationError: On unknown keys or values of the wrong type
        DomainError: On invariant violations (e.g. infeasible thresholds)
    """
    merged: dict[str, Any] = {}
    for layer in layers:
        merged.update({key: value for key, value in layer.items() if value is not None})
    try:
        return ExperimentConfig(**merged)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = str(first["loc"][0]) if first["loc"] else None
        if first["type"] == "extra_forbidden":
            raise ConfigurationError(f"Unknown configuration key '{key}'", config_key=key) from None
        raise ConfigurationError(
            f"Invalid value for '{key}': {first['msg']}", config_key=key
        ) from None
