"""
📁 File: src/layer4_optimization/models.py
Layer: Layer 4 (Optimization)
Purpose: Search grids, sweep curves and threshold-search results
Depends on: pydantic, numpy
Used by: grid, kljn_search, thermod_sweeps, CLI

Defines:
- AxisSpec / GridSpec: lattices lower + k * step, rounded to 12 decimals
- SweepResult: objective values on the product of its axes with a lexicographic argmin
- ThresholdSearchResult: winning thresholds, objective and the profile curve
"""

import math
from typing import Optional, Self

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.layer1_kljn.models import CurrentThresholds, DetectorKind, VoltageThresholds
from src.layer1_kljn.theory import ndii_thresholds
from src.shared.errors import GridError

# Search resolution accepted for user-facing grids
MIN_STEP = 0.001
MAX_STEP = 0.05

_LATTICE_DECIMALS = 12
_LATTICE_EPS = 1e-9


class AxisSpec(BaseModel):
    """One search axis: lower, lower + step, ... up to upper."""

    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float
    step: float

    @model_validator(mode="after")
    def check_bounds(self) -> Self:
        if not (self.step > 0.0 and self.lower < self.upper):
            raise GridError(
                "axis",
                "need lower < upper and step > 0",
                details={"lower": self.lower, "upper": self.upper, "step": self.step},
            )
        return self

    @property
    def size(self) -> int:
        return math.floor((self.upper - self.lower) / self.step + _LATTICE_EPS) + 1

    def points(self) -> np.ndarray:
        return np.round(self.lower + np.arange(self.size) * self.step, _LATTICE_DECIMALS)


class GridSpec(BaseModel):
    """Product grid over named threshold axes, in search (tie-break) order."""

    model_config = ConfigDict(frozen=True)

    axes: dict[str, AxisSpec]

    @model_validator(mode="after")
    def check_steps(self) -> Self:
        if not self.axes:
            raise GridError("grid", "no axes given")
        for name, axis in self.axes.items():
            if not (MIN_STEP - _LATTICE_EPS <= axis.step <= MAX_STEP + _LATTICE_EPS):
                raise GridError(
                    name,
                    f"step {axis.step} outside [{MIN_STEP}, {MAX_STEP}]",
                    details={"step": axis.step},
                )
        return self

    @property
    def total_points(self) -> int:
        return math.prod(axis.size for axis in self.axes.values())


class SweepResult(BaseModel):
    """
    Objective values on the product of `axes`.

    Ties are broken by the smallest parameter values in axis order, which is
    numpy's first-occurrence argmin on the C-ordered array.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    axis_names: list[str]
    axes: list[np.ndarray]
    values: np.ndarray
    argmin: dict[str, float]
    minimum: float
    label: Optional[str] = None

    @model_validator(mode="after")
    def check_shape(self) -> Self:
        expected = tuple(len(axis) for axis in self.axes)
        if len(self.axis_names) != len(self.axes) or self.values.shape != expected:
            raise GridError(
                "sweep",
                "axes and values do not line up",
                details={"axes": list(expected), "values": list(self.values.shape)},
            )
        return self

    @classmethod
    def from_values(
        cls,
        axis_names: list[str],
        axes: list[ArrayLike],
        values: ArrayLike,
        label: Optional[str] = None,
    ) -> "SweepResult":
        arrays = [np.asarray(axis, dtype=np.float64) for axis in axes]
        vals = np.asarray(values, dtype=np.float64)
        index = np.unravel_index(int(np.argmin(vals)), vals.shape)
        return cls(
            axis_names=axis_names,
            axes=arrays,
            values=vals,
            argmin={name: float(arrays[i][index[i]]) for i, name in enumerate(axis_names)},
            minimum=float(vals[index]),
            label=label,
        )


class ThresholdSearchResult(BaseModel):
    """Best thresholds found for a detector, with its BEP and the profile along the first axis."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    detector: DetectorKind
    alpha: float
    n_samples: int
    thresholds: dict[str, float] = Field(..., description="Winning value per searched axis")
    bep: float
    profile: SweepResult
    two_pass: bool
    grid_points: int

    def threshold_sets(self) -> tuple[Optional[VoltageThresholds], Optional[CurrentThresholds]]:
        """
        Threshold objects ready for simulation.

        Unsearched thresholds (beta and eta under ND-II) get the analytic seeds.
        """
        t = self.thresholds
        if self.detector == DetectorKind.CLASSICAL_VOLTAGE:
            return VoltageThresholds(beta=t["beta"], kappa=t["kappa"]), None
        if self.detector == DetectorKind.CLASSICAL_CURRENT:
            return None, CurrentThresholds(eta=t["eta"], xi=t["xi"])
        if self.detector == DetectorKind.NEW_DETECTOR_I:
            return (
                VoltageThresholds(beta=t["beta"], kappa=t["kappa"]),
                CurrentThresholds(eta=t["eta"], xi=t["xi"]),
            )
        xi = t.get("xi", t["kappa"] / self.alpha)
        return ndii_thresholds(self.alpha, t["kappa"], xi)
