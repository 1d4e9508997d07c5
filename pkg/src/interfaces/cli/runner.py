"""
📁 File: src/interfaces/cli/runner.py
Layer: Interfaces (CLI)
Purpose: Execute one experiment command and write its result table
Depends on: pandas, Layers 1-4, csv_io, svg
Used by: main, figures (shared row builders)

Every command produces one CSV (and with format = svg a plot next to it).
Rows are built per sample count N in the order of the configured N values.
"""

from enum import Enum
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd

from src.interfaces.cli.csv_io import write_results_csv
from src.interfaces.cli.experiment import ExperimentConfig, OutputFormat, Scheme, ThresholdSource
from src.interfaces.cli.svg import write_line_svg
from src.layer1_kljn.models import CurrentThresholds, DetectorKind, KljnConfig, VoltageThresholds
from src.layer1_kljn.theory import (
    bep_for_detector,
    ndii_thresholds,
    seed_current_thresholds,
    seed_voltage_thresholds,
)
from src.layer2_thermod.models import ThermodConfig, ThermodThreshold
from src.layer2_thermod.theory import (
    thermod_bep,
    thermod_bep_largealpha,
    thermod_bep_uniform,
    uniform_chi,
)
from src.layer3_simulation.kljn_sim import simulate_kljn
from src.layer3_simulation.models import SimOutcome
from src.layer3_simulation.thermod_sim import simulate_thermod
from src.layer4_optimization.grid import default_grid
from src.layer4_optimization.kljn_search import optimize_kljn_thresholds
from src.layer4_optimization.models import ThresholdSearchResult
from src.layer4_optimization.thermod_sweeps import default_chi_grid, sweep_chi
from src.shared.config import get_settings
from src.shared.errors import ConfigurationError
from src.shared.logger import bind_context, clear_context, get_logger

logger = get_logger(__name__)
settings = get_settings()


class Command(str, Enum):
    KLJN_THEORY = "kljn-theory"
    KLJN_SIM = "kljn-sim"
    KLJN_OPTIMIZE = "kljn-optimize"
    THERMOD_THEORY = "thermod-theory"
    THERMOD_SIM = "thermod-sim"
    THERMOD_SWEEP = "thermod-sweep"

    @property
    def scheme(self) -> Scheme:
        return Scheme.KLJN if self.value.startswith("kljn") else Scheme.THERMOD


KljnThresholds = tuple[Optional[VoltageThresholds], Optional[CurrentThresholds]]


# ==========================================
# THRESHOLD RESOLUTION
# ==========================================

def uniform_kljn_thresholds(alpha: float, detector: DetectorKind) -> KljnThresholds:
    """Analytic seed thresholds; ND-II takes xi = kappa / alpha."""
    vth = seed_voltage_thresholds(alpha)
    if detector == DetectorKind.NEW_DETECTOR_II:
        return ndii_thresholds(alpha, vth.kappa, vth.kappa / alpha)
    cth = seed_current_thresholds(alpha)
    return (
        vth if detector != DetectorKind.CLASSICAL_CURRENT else None,
        cth if detector != DetectorKind.CLASSICAL_VOLTAGE else None,
    )


def resolve_kljn_thresholds(
    config: ExperimentConfig, cfg: KljnConfig
) -> tuple[KljnThresholds, Optional[ThresholdSearchResult]]:
    """Thresholds for one N, plus the search result when they were optimized."""
    source = config.resolved_thresholds
    if source == ThresholdSource.EXPLICIT:
        vth, cth, _ = config.explicit_thresholds()
        return (vth, cth), None
    if source == ThresholdSource.OPTIMIZE:
        grid = default_grid(cfg, config.detector, step=config.step)
        search = optimize_kljn_thresholds(cfg, config.detector, grid)
        return search.threshold_sets(), search
    return uniform_kljn_thresholds(cfg.alpha, config.detector), None


def resolve_thermod_threshold(config: ExperimentConfig, cfg: ThermodConfig) -> ThermodThreshold:
    if config.resolved_thresholds == ThresholdSource.EXPLICIT:
        _, _, th = config.explicit_thresholds()
        return th
    return uniform_chi(cfg)


# ==========================================
# ROW BUILDERS
# ==========================================

def threshold_columns(vth: Optional[VoltageThresholds], cth: Optional[CurrentThresholds]) -> dict[str, float]:
    columns: dict[str, float] = {}
    if vth is not None:
        columns.update(beta=vth.beta, kappa=vth.kappa)
    if cth is not None:
        columns.update(eta=cth.eta, xi=cth.xi)
    return columns


def outcome_columns(outcome: SimOutcome, suffix: str = "") -> dict[str, Any]:
    """Simulation columns of a result row; `suffix` distinguishes sampling modes."""
    columns: dict[str, Any] = {
        "ber": outcome.ber,
        "ci_halfwidth": outcome.ber_ci_halfwidth,
        "bits": outcome.bits_simulated,
        "clamp_events": outcome.clamp_events,
    }
    if outcome.scheme == "kljn":
        columns.update(
            ber_alice=outcome.ber_alice,
            ber_bob=outcome.ber_bob,
            errors_alice=outcome.errors_alice,
            errors_bob=outcome.errors_bob,
            discarded=outcome.discarded,
            discard_fraction=outcome.discard_fraction,
            eve_secure_fraction=outcome.eve_secure_fraction,
            eve_accuracy_on_secure=outcome.eve_accuracy_on_secure,
        )
    else:
        columns["errors"] = outcome.errors_bob
    return {f"{key}{suffix}": value for key, value in columns.items()}


def kljn_row(config: ExperimentConfig, n: int, simulate: bool) -> dict[str, Any]:
    cfg = KljnConfig(alpha=config.alpha, n_samples=n)
    (vth, cth), search = resolve_kljn_thresholds(config, cfg)
    row: dict[str, Any] = {"N": n}
    if search is not None:
        row.update(threshold_columns(vth, cth), bep_theory=search.bep)
    else:
        row["bep_theory"] = bep_for_detector(cfg, config.detector, vth, cth)
    if simulate:
        outcome = simulate_kljn(
            cfg,
            config.detector,
            vth,
            cth,
            config.mode,
            config.stop_rule,
            config.seed,
            ndi_policy=config.ndi_policy,
            chunk_size=config.chunk_size,
            workers=config.workers,
        )
        row.update(outcome_columns(outcome))
    return row


def thermod_row(config: ExperimentConfig, n: int, simulate: bool) -> dict[str, Any]:
    cfg = ThermodConfig(alpha=config.alpha, delta=config.delta, n_samples=n)
    th = resolve_thermod_threshold(config, cfg)
    row: dict[str, Any] = {
        "N": n,
        "chi": th.chi,
        "bep_theory": thermod_bep(cfg, th),
        "bep_uniform": thermod_bep_uniform(cfg),
        "bep_largealpha": thermod_bep_largealpha(cfg),
    }
    if simulate:
        outcome = simulate_thermod(
            cfg,
            th,
            config.mode,
            config.stop_rule,
            config.seed,
            chunk_size=config.chunk_size,
            workers=config.workers,
        )
        row.update(outcome_columns(outcome))
    return row


def chi_sweep_frame(alpha: float, delta: float, n_values: list[int], step: float) -> pd.DataFrame:
    """
    Long table (N, chi, bep, is_uniform_chi) of the TherMod BEP across thresholds.

    The exact uniform-error threshold is inserted into each grid.
    """
    parts = []
    for n in n_values:
        cfg = ThermodConfig(alpha=alpha, delta=delta, n_samples=n)
        chi_u = uniform_chi(cfg).chi
        chis = np.unique(np.append(default_chi_grid(cfg, step), chi_u))
        sweep = sweep_chi(cfg, chis)
        parts.append(
            pd.DataFrame(
                {"N": n, "chi": chis, "bep": sweep.values, "is_uniform_chi": chis == chi_u}
            )
        )
    return pd.concat(parts, ignore_index=True)


# ==========================================
# COMMANDS
# ==========================================

def _build_table(config: ExperimentConfig, command: Command) -> tuple[pd.DataFrame, dict[str, Any]]:
    extra: dict[str, Any] = {}
    if command == Command.THERMOD_SWEEP:
        frame = chi_sweep_frame(config.alpha, config.delta, config.n_values, config.step)
        for n, part in frame.groupby("N"):
            best = part.loc[part["bep"].idxmin()]
            extra[f"argmin_chi_N{n}"] = float(best["chi"])
        return frame, extra

    simulate = config.simulate or command in (Command.KLJN_SIM, Command.THERMOD_SIM)
    if command.scheme == Scheme.KLJN:
        rows = [kljn_row(config, n, simulate) for n in config.n_values]
    else:
        rows = [thermod_row(config, n, simulate) for n in config.n_values]
    return pd.DataFrame(rows), extra


def _write_svg(path: Path, frame: pd.DataFrame, command: Command) -> Path:
    if command == Command.THERMOD_SWEEP:
        return write_line_svg(path, frame, "chi", ["bep"], group_by=["N"], title=command.value)
    curves = [c for c in ("bep_theory", "bep_uniform", "bep_largealpha") if c in frame]
    markers = ["ber"] if "ber" in frame else None
    return write_line_svg(path, frame, "N", curves, markers=markers, title=command.value)


def run_experiment(config: ExperimentConfig, command: Command) -> list[Path]:
    """
    Run `command` for every configured N and write the result file(s).

    Returns:
        Paths written, the CSV first

    Raises:
        ConfigurationError: If the command does not match the configured scheme
        DomainError: On infeasible parameters or thresholds
        OutputError: If a result file cannot be written
    """
    if command.scheme != config.scheme:
        raise ConfigurationError(
            f"Command '{command.value}' needs scheme = {command.scheme.value}", config_key="scheme"
        )
    if command == Command.KLJN_OPTIMIZE:
        config = config.model_copy(update={"thresholds": ThresholdSource.OPTIMIZE})
    bind_context(command=command.value, seed=config.seed)
    try:
        logger.info("experiment_started", n_values=config.n_values, detector=config.detector.value)
        frame, extra = _build_table(config, command)
        target = Path(config.output) if config.output else Path(settings.OUTPUT_DIR) / f"{command.value}.csv"
        metadata = {"command": command.value, **config.metadata(), **extra}
        written = [write_results_csv(target, frame, metadata)]
        if config.format == OutputFormat.SVG:
            written.append(_write_svg(target.with_suffix(".svg"), frame, command))
        logger.info("experiment_completed", rows=len(frame), outputs=[str(p) for p in written])
        return written
    finally:
        clear_context()
