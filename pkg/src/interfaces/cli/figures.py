"""
📁 File: src/interfaces/cli/figures.py
Layer: Interfaces (CLI)
Purpose: Reference figure data sets (fig5 .. fig10)
Depends on: numpy, pandas, Layers 1-4, runner, csv_io, svg
Used by: main (`thercom figure <id>`)

- Desk scale caps every simulated point at DESK_MAX_BITS and skips points whose
  theory BEP is below DESK_MIN_BEP (NaN in the CSV); full scale uses the FULL_* settings.
- Every simulated point of a figure uses the same master seed.
- The resistance ratio is 10 unless a figure sweeps it.
"""

from enum import Enum
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np
import pandas as pd

from src.interfaces.cli.csv_io import write_results_csv
from src.interfaces.cli.experiment import FigureId, OutputFormat
from src.interfaces.cli.runner import chi_sweep_frame, outcome_columns
from src.interfaces.cli.svg import write_line_svg
from src.layer1_kljn.models import CurrentThresholds, DetectorKind, KljnConfig, VoltageThresholds
from src.layer1_kljn.theory import bep_ndi, bep_ndii, bep_voltage, ndii_thresholds, prob_correct_ndi
from src.layer2_thermod.models import ThermodConfig
from src.layer2_thermod.theory import thermod_bep_largealpha, thermod_bep_uniform, uniform_chi
from src.layer3_simulation.kljn_sim import simulate_kljn
from src.layer3_simulation.models import NdiPolicy, SampleMode, SimOutcome, StopRule
from src.layer3_simulation.thermod_sim import simulate_thermod
from src.layer4_optimization.kljn_search import sweep_beta_kappa_surface
from src.layer4_optimization.models import AxisSpec
from src.layer4_optimization.thermod_sweeps import default_alpha_grid, sweep_alpha
from src.shared.config import get_settings
from src.shared.logger import bind_context, clear_context, get_logger

logger = get_logger(__name__)
settings = get_settings()

FIGURE_ALPHA = 10.0

# Threshold sets used by the detector comparison (optimized once at N = 100)
FIG7_CLASSICAL = VoltageThresholds(beta=1.3160, kappa=3.1512)
FIG7_NDI = (VoltageThresholds(beta=1.3150, kappa=3.1532), CurrentThresholds(eta=0.1300, xi=0.3168))
FIG7_NDII = ndii_thresholds(FIGURE_ALPHA, 3.1512, 0.3148)


class Scale(str, Enum):
    DESK = "desk"
    FULL = "full"


# ==========================================
# SHARED HELPERS
# ==========================================

class _PointRunner:
    """Simulates figure points in both sampling modes under one seed and scale."""

    def __init__(self, seed: int, scale: Scale, workers: Optional[int], chunk_size: Optional[int]) -> None:
        self.seed = seed
        self.scale = scale
        self.workers = workers
        self.chunk_size = chunk_size
        self.stop = StopRule(
            max_bits=settings.max_bits_for_scale(scale.value), min_errors=settings.DEFAULT_MIN_ERRORS
        )
        self.min_bep = settings.min_bep_for_scale(scale.value)
        self.skipped = 0

    def columns(
        self,
        theory: float,
        simulate: Callable[[SampleMode], SimOutcome],
        fields: tuple[str, ...] = ("ber", "ci_halfwidth", "bits"),
    ) -> dict[str, Any]:
        """Simulation columns suffixed by mode; NaN when the point is below the resolvable BEP."""
        row: dict[str, Any] = {}
        run = np.isfinite(theory) and theory >= self.min_bep
        if not run:
            self.skipped += 1
        for mode in SampleMode:
            suffix = "_" + mode.value.replace("-", "_")
            if run:
                values = outcome_columns(simulate(mode))
                row.update({f"{key}{suffix}": values[key] for key in fields})
            else:
                row.update({f"{key}{suffix}": float("nan") for key in fields})
        return row

    def kljn(
        self,
        cfg: KljnConfig,
        detector: DetectorKind,
        vth: Optional[VoltageThresholds],
        cth: Optional[CurrentThresholds],
        policy: NdiPolicy = NdiPolicy.DISCARD,
    ) -> Callable[[SampleMode], SimOutcome]:
        return lambda mode: simulate_kljn(
            cfg, detector, vth, cth, mode, self.stop, self.seed,
            ndi_policy=policy, chunk_size=self.chunk_size, workers=self.workers,
        )

    def metadata(self) -> dict[str, Any]:
        return {
            "max_bits": self.stop.max_bits,
            "min_errors": self.stop.min_errors,
            "min_simulated_bep": self.min_bep,
            "chunk_size": self.chunk_size or settings.CHUNK_SIZE,
            "skipped_points": self.skipped,
        }


SvgSpec = dict[str, Any]


# ==========================================
# FIGURE BUILDERS
# ==========================================

def _fig5(points: _PointRunner) -> tuple[pd.DataFrame, dict[str, Any], SvgSpec]:
    """Classical voltage detector, theory against both simulation modes."""
    rows = []
    for vth in (VoltageThresholds(beta=4.0 / 3.0, kappa=5.0), VoltageThresholds(beta=1.3, kappa=4.0)):
        for n in range(50, 401, 25):
            cfg = KljnConfig(alpha=FIGURE_ALPHA, n_samples=n)
            theory = bep_voltage(cfg, vth)
            row = {"N": n, "beta": vth.beta, "kappa": vth.kappa, "bep_theory": theory}
            row.update(points.columns(theory, points.kljn(cfg, DetectorKind.CLASSICAL_VOLTAGE, vth, None)))
            rows.append(row)
    frame = pd.DataFrame(rows)
    ratio = frame["ber_raw_samples"] / frame["bep_theory"]
    extra = {"raw_gap_max": float(ratio.max()) if ratio.notna().any() else float("nan")}
    svg = {
        "x": "N",
        "curves": ["bep_theory"],
        "markers": ["ber_gaussian_fit", "ber_raw_samples"],
        "group_by": ["beta", "kappa"],
    }
    return frame, extra, svg


def _fig6(points: _PointRunner) -> tuple[pd.DataFrame, dict[str, Any], SvgSpec]:
    """Classical voltage BEP surfaces over (beta, kappa), long format."""
    step = 0.01 if points.scale == Scale.DESK else settings.FINE_STEP
    betas = AxisSpec(lower=1.05, upper=1.8, step=step).points()
    kappas = AxisSpec(lower=2.0, upper=9.9, step=step).points()
    parts, extra = [], {}
    for n in (50, 100, 200, 400):
        sweep = sweep_beta_kappa_surface(KljnConfig(alpha=FIGURE_ALPHA, n_samples=n), betas, kappas)
        b, k = np.meshgrid(sweep.axes[0], sweep.axes[1], indexing="ij")
        parts.append(pd.DataFrame({"N": n, "beta": b.ravel(), "kappa": k.ravel(), "bep": sweep.values.ravel()}))
        extra[f"argmin_beta_N{n}"] = sweep.argmin["beta"]
        extra[f"argmin_kappa_N{n}"] = sweep.argmin["kappa"]
    frame = pd.concat(parts, ignore_index=True)
    extra["step"] = step
    profile = frame.groupby(["N", "beta"], as_index=False)["bep"].min()
    return frame, extra, {"frame": profile, "x": "beta", "curves": ["bep"], "group_by": ["N"]}


def _fig7(points: _PointRunner) -> tuple[pd.DataFrame, dict[str, Any], SvgSpec]:
    """Classical voltage, ND-I under every policy, and ND-II at fixed thresholds."""
    vth_i, cth_i = FIG7_NDI
    vth_ii, cth_ii = FIG7_NDII
    fields = ("ber", "ci_halfwidth", "bits", "discard_fraction")
    rows = []
    for n in range(50, 76, 5):
        cfg = KljnConfig(alpha=FIGURE_ALPHA, n_samples=n)
        ndi = bep_ndi(cfg, vth_i, cth_i)
        variants = [
            ("classical-voltage", "none", bep_voltage(cfg, FIG7_CLASSICAL),
             points.kljn(cfg, DetectorKind.CLASSICAL_VOLTAGE, FIG7_CLASSICAL, None)),
            ("nd-ii", "none", bep_ndii(cfg, vth_ii.kappa, cth_ii.xi),
             points.kljn(cfg, DetectorKind.NEW_DETECTOR_II, vth_ii, cth_ii)),
        ]
        theories = {
            NdiPolicy.RANDOM_GUESS: ndi,
            NdiPolicy.FLAG_AS_ERROR: 1.0 - prob_correct_ndi(cfg, vth_i, cth_i),
            NdiPolicy.DISCARD: float("nan"),
        }
        for policy, theory in theories.items():
            variants.append(
                ("nd-i", policy.value, theory,
                 points.kljn(cfg, DetectorKind.NEW_DETECTOR_I, vth_i, cth_i, policy))
            )
        for detector, policy, theory, simulate in variants:
            gate = theory if np.isfinite(theory) else ndi
            row = {"N": n, "detector": detector, "ndi_policy": policy, "bep_theory": theory}
            row.update(points.columns(gate, simulate, fields))
            rows.append(row)
    svg = {
        "x": "N",
        "curves": ["bep_theory"],
        "markers": ["ber_gaussian_fit", "ber_raw_samples"],
        "group_by": ["detector", "ndi_policy"],
    }
    return pd.DataFrame(rows), {}, svg


def _fig8(points: _PointRunner) -> tuple[pd.DataFrame, dict[str, Any], SvgSpec]:
    """TherMod at the uniform-error threshold."""
    rows = []
    for delta in (0.05, 0.1, 0.2, 0.5):
        for n in (10, 25, 50, 100, 200, 400):
            cfg = ThermodConfig(alpha=FIGURE_ALPHA, delta=delta, n_samples=n)
            th = uniform_chi(cfg)
            theory = thermod_bep_uniform(cfg)
            row = {
                "delta": delta,
                "N": n,
                "chi": th.chi,
                "bep_theory": theory,
                "bep_largealpha": thermod_bep_largealpha(cfg),
            }
            row.update(
                points.columns(
                    theory,
                    lambda mode, cfg=cfg, th=th: simulate_thermod(
                        cfg, th, mode, points.stop, points.seed,
                        chunk_size=points.chunk_size, workers=points.workers,
                    ),
                )
            )
            rows.append(row)
    svg = {
        "x": "N",
        "curves": ["bep_theory", "bep_largealpha"],
        "markers": ["ber_gaussian_fit", "ber_raw_samples"],
        "group_by": ["delta"],
    }
    return pd.DataFrame(rows), {}, svg


def _fig9(points: _PointRunner) -> tuple[pd.DataFrame, dict[str, Any], SvgSpec]:
    """TherMod BEP across thresholds, uniform-error threshold marked."""
    delta = 0.1
    frame = chi_sweep_frame(FIGURE_ALPHA, delta, [50, 100, 200, 400], settings.FINE_STEP)
    extra: dict[str, Any] = {"delta": delta}
    for n, part in frame.groupby("N"):
        extra[f"argmin_chi_N{n}"] = float(part.loc[part["bep"].idxmin(), "chi"])
    return frame, extra, {"x": "chi", "curves": ["bep"], "group_by": ["N"]}


def _fig10(points: _PointRunner) -> tuple[pd.DataFrame, dict[str, Any], SvgSpec]:
    """Uniform-threshold TherMod BEP against the resistance ratio."""
    n = 100
    step = 0.05 if points.scale == Scale.DESK else 0.01
    alphas = default_alpha_grid(step)
    parts = []
    for delta in (0.1, 0.2):
        sweep = sweep_alpha(delta, n, alphas)
        parts.append(pd.DataFrame({"delta": delta, "alpha": sweep.axes[0], "bep": sweep.values}))
    frame = pd.concat(parts, ignore_index=True)
    return frame, {"N": n, "step": step}, {"x": "alpha", "curves": ["bep"], "group_by": ["delta"]}


_BUILDERS: dict[FigureId, Callable[[_PointRunner], tuple[pd.DataFrame, dict[str, Any], SvgSpec]]] = {
    FigureId.FIG5: _fig5,
    FigureId.FIG6: _fig6,
    FigureId.FIG7: _fig7,
    FigureId.FIG8: _fig8,
    FigureId.FIG9: _fig9,
    FigureId.FIG10: _fig10,
}


def reproduce_figure(
    figure: FigureId,
    seed: Optional[int] = None,
    scale: Scale = Scale.DESK,
    output_dir: Optional[str | Path] = None,
    fmt: OutputFormat = OutputFormat.CSV,
    workers: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> list[Path]:
    """
    Compute one figure's data set and write `<output_dir>/<figure>.csv`.

    Returns:
        Paths written, the CSV first

    Raises:
        OutputError: If a result file cannot be written
    """
    seed = settings.DEFAULT_SEED if seed is None else seed
    bind_context(command="figure", figure=figure.value, seed=seed)
    try:
        logger.info("figure_started", scale=scale.value)
        points = _PointRunner(seed, scale, workers, chunk_size)
        frame, extra, svg = _BUILDERS[figure](points)
        metadata = {
            "command": "figure",
            "figure": figure.value,
            "scale": scale.value,
            "seed": seed,
            "alpha": FIGURE_ALPHA,
            **points.metadata(),
            **extra,
        }
        target = Path(output_dir or settings.OUTPUT_DIR) / f"{figure.value}.csv"
        written = [write_results_csv(target, frame, metadata)]
        if fmt == OutputFormat.SVG:
            plot_frame = svg.pop("frame", frame)
            written.append(
                write_line_svg(
                    target.with_suffix(".svg"),
                    plot_frame,
                    svg.pop("x"),
                    svg.pop("curves"),
                    title=figure.value,
                    ylabel="BEP" if not svg.get("markers") else "BEP / BER",
                    **svg,
                )
            )
        logger.info("figure_completed", rows=len(frame), skipped_points=points.skipped)
        return written
    finally:
        clear_context()
