"""
📁 File: src/layer4_optimization/grid.py
Layer: Layer 4 (Optimization)
Purpose: Feasibility intervals, default grids and grid validation
Depends on: src/layer4_optimization/models, Layer 1 (KLJN)
Used by: kljn_search, thermod_sweeps, CLI

Default grids cover the open feasibility interval of each threshold shrunk by
one step at both ends and snapped to multiples of the step, so halving the step
yields a lattice containing the coarser one.
"""

import math

from src.layer1_kljn.models import DetectorKind, KljnConfig
from src.layer4_optimization.models import AxisSpec, GridSpec
from src.shared.config import get_settings
from src.shared.errors import GridError

settings = get_settings()

_EPS = 1e-9


def detector_axes(detector: DetectorKind, reduce_ndii: bool = False) -> tuple[str, ...]:
    """Searched thresholds of a detector, in tie-break order."""
    if detector == DetectorKind.CLASSICAL_VOLTAGE:
        return ("beta", "kappa")
    if detector == DetectorKind.CLASSICAL_CURRENT:
        return ("eta", "xi")
    if detector == DetectorKind.NEW_DETECTOR_I:
        return ("beta", "kappa", "eta", "xi")
    return ("kappa",) if reduce_ndii else ("kappa", "xi")


def feasible_interval(name: str, alpha: float) -> tuple[float, float]:
    """Open interval a normalized KLJN threshold must lie in."""
    v01 = 2.0 * alpha / (1.0 + alpha)
    c01 = 2.0 / (1.0 + alpha)
    intervals = {
        "beta": (1.0, v01),
        "kappa": (v01, alpha),
        "eta": (1.0 / alpha, c01),
        "xi": (c01, 1.0),
    }
    if name not in intervals:
        raise GridError(name, "unknown threshold axis")
    return intervals[name]


def interior_axis(lower: float, upper: float, step: float) -> AxisSpec:
    """Lattice of step multiples strictly inside (lower, upper), one step in from each end."""
    lo = round((math.floor(lower / step + _EPS) + 1) * step, 12)
    hi = round((math.ceil(upper / step - _EPS) - 1) * step, 12)
    if not lo < hi:
        raise GridError(
            "axis",
            f"interval ({lower:.6g}, {upper:.6g}) too narrow for step {step}",
            details={"lower": lower, "upper": upper, "step": step},
        )
    return AxisSpec(lower=lo, upper=hi, step=step)


def default_grid(
    cfg: KljnConfig,
    detector: DetectorKind,
    step: float | None = None,
    reduce_ndii: bool = False,
) -> GridSpec:
    """Default search grid of a detector at resolution `step` (FINE_STEP by default)."""
    resolution = step or settings.FINE_STEP
    return GridSpec(
        axes={
            name: interior_axis(*feasible_interval(name, cfg.alpha), resolution)
            for name in detector_axes(detector, reduce_ndii)
        }
    )


def check_grid(
    grid: GridSpec, alpha: float, detector: DetectorKind, reduce_ndii: bool = False
) -> None:
    """
    Raise GridError unless the grid searches exactly the detector's thresholds
    inside their open feasibility intervals.
    """
    expected = detector_axes(detector, reduce_ndii)
    if tuple(grid.axes) != expected:
        raise GridError(
            "grid",
            f"{detector.value} searches {list(expected)}, got {list(grid.axes)}",
        )
    for name, axis in grid.axes.items():
        lower, upper = feasible_interval(name, alpha)
        if not (lower < axis.lower and axis.points()[-1] < upper):
            raise GridError(
                name,
                f"[{axis.lower:.6g}, {axis.upper:.6g}] leaves ({lower:.6g}, {upper:.6g})",
                details={"lower": lower, "upper": upper},
            )
