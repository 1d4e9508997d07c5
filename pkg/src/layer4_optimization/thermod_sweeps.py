"""
📁 File: src/layer4_optimization/thermod_sweeps.py
Layer: Layer 4 (Optimization)
Purpose: TherMod threshold and resistance-ratio sweeps
Depends on: numpy, Layer 2 (TherMod theory), src/layer4_optimization/models
Used by: CLI (thermod-sweep, figure reproduction)
"""

import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from src.layer0_physics.gaussian import q_function
from src.layer2_thermod.models import ThermodConfig
from src.layer2_thermod.theory import chi_terms
from src.layer4_optimization.grid import interior_axis
from src.layer4_optimization.models import SweepResult
from src.shared.config import get_settings
from src.shared.errors import GridError

settings = get_settings()

# Largest resistance ratio of the alpha sweep
ALPHA_SWEEP_MAX = 40.0


def default_chi_grid(cfg: ThermodConfig, step: Optional[float] = None) -> np.ndarray:
    """Step multiples strictly inside (1 + delta, 1 + alpha * delta)."""
    axis = interior_axis(1.0 + cfg.delta, 1.0 + cfg.alpha * cfg.delta, step or settings.FINE_STEP)
    return axis.points()


def default_alpha_grid(step: float = 0.05, upper: float = ALPHA_SWEEP_MAX) -> np.ndarray:
    """1 + step, 1 + 2 step, ..., upper."""
    count = int(round((upper - 1.0) / step))
    return np.round(1.0 + step * np.arange(1, count + 1), 12)


def sweep_chi(cfg: ThermodConfig, chi_grid: ArrayLike) -> SweepResult:
    """
    TherMod BEP across thresholds at fixed (alpha, delta, N).

    Raises:
        GridError: If any threshold leaves (1 + delta, 1 + alpha * delta)
    """
    chis = np.asarray(chi_grid, dtype=np.float64)
    lower, upper = 1.0 + cfg.delta, 1.0 + cfg.alpha * cfg.delta
    if chis.size == 0 or not (lower < chis.min() and chis.max() < upper):
        raise GridError(
            "chi",
            f"grid must lie inside ({lower:.6g}, {upper:.6g})",
            details={"lower": lower, "upper": upper},
        )
    p01, p10 = chi_terms(cfg, chis)
    return SweepResult.from_values(
        ["chi"], [chis], 0.5 * (p01 + p10), label=f"N={cfg.n_samples}"
    )


def sweep_alpha(delta: float, n: int, alpha_grid: ArrayLike) -> SweepResult:
    """
    Uniform-threshold TherMod BEP along a resistance-ratio grid.

    Raises:
        GridError: If the grid is empty or reaches alpha <= 1, or delta/n are invalid
    """
    alphas = np.asarray(alpha_grid, dtype=np.float64)
    if alphas.size == 0 or not alphas.min() > 1.0:
        raise GridError("alpha", "grid must be nonempty and strictly above 1")
    if not (delta > 0.0 and n >= 2):
        raise GridError("alpha", "delta must be positive and n at least 2", {"delta": delta, "n": n})
    argument = math.sqrt(n) * delta * (alphas - 1.0) / (2.0 + delta * (1.0 + alphas))
    return SweepResult.from_values(
        ["alpha"], [alphas], q_function(argument), label=f"delta={delta:g}"
    )
