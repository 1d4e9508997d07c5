"""
📁 File: src/layer3_simulation/estimators.py
Layer: Layer 3 (Simulation)
Purpose: Sample-variance estimators and their random realization
Depends on: numpy, src/layer3_simulation/models
Used by: kljn_sim, thermod_sim, CLI

Two ways to realize the sample variance of a bit interval:
- gaussian-fit: one draw from N(var, 2 var^2 / (m N)), m = 1 real, m = 2 complex,
  clamped at zero (clamps are counted)
- raw-samples: N zero-mean Gaussian samples (complex: independent I/Q parts with
  variance var/2 each) pushed through the estimator, i.e. the exact chi-square law

Raw draws are generated in row batches; numpy fills arrays in C order, so the
stream is identical to one (rows, N) draw while memory stays bounded.
"""

import math
from typing import Optional, overload

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.layer3_simulation.models import KljnSampleBlock, SampleMode, ThermodSampleBlock
from src.shared.config import get_settings
from src.shared.errors import DomainError

settings = get_settings()

FloatArray = NDArray[np.float64]

# Rows of raw samples generated per batch
_RAW_BATCH_ROWS = 2048


def estimate_variance(samples: ArrayLike, axis: int = -1) -> float | FloatArray:
    """
    Zero-mean sample variance (1/N) * sum x_k^2 along an axis.

    Raises:
        DomainError: If the sequence is empty
    """
    arr = np.asarray(samples, dtype=np.float64)
    if arr.size == 0 or arr.shape[axis] == 0:
        raise DomainError("Cannot estimate the variance of an empty sequence")
    result = np.mean(arr * arr, axis=axis)
    if np.ndim(result) == 0:
        return float(result)
    return result


def estimate_complex_variance(block: ThermodSampleBlock | ArrayLike) -> float:
    """
    Complex sample variance (1/N) * sum |s_n|^2 of one bit's baseband samples.

    Accepts a ThermodSampleBlock or an (N, 2) array of in-phase/quadrature pairs.

    Raises:
        DomainError: If the block is empty
    """
    arr = block.complex_samples if isinstance(block, ThermodSampleBlock) else np.asarray(block)
    arr = np.asarray(arr, dtype=np.float64).reshape(-1, 2)
    if arr.shape[0] == 0:
        raise DomainError("Cannot estimate the variance of an empty block")
    return float(np.sum(arr * arr) / arr.shape[0])


def realize_variances(
    true_variance: FloatArray,
    n: int,
    mode: SampleMode,
    dof_multiplier: int,
    rng: np.random.Generator,
) -> tuple[FloatArray, int]:
    """
    Vectorized sample-variance realization for a batch of bit intervals.

    Args:
        true_variance: Per-bit true variance, shape (m,)
        n: Samples per bit
        mode: Realization mode
        dof_multiplier: 1 for real samples, 2 for complex samples
        rng: Stream to draw from

    Returns:
        (realized variances, number of clamped gaussian-fit draws)
    """
    var = np.asarray(true_variance, dtype=np.float64)
    if mode == SampleMode.GAUSSIAN_FIT:
        z = rng.standard_normal(var.shape)
        draws = var * (1.0 + math.sqrt(2.0 / (dof_multiplier * n)) * z)
        clamps = int(np.count_nonzero(draws < 0.0))
        return np.maximum(draws, 0.0), clamps

    out = np.empty_like(var)
    for start in range(0, var.shape[0], _RAW_BATCH_ROWS):
        stop = min(start + _RAW_BATCH_ROWS, var.shape[0])
        z = rng.standard_normal((stop - start, n, dof_multiplier))
        out[start:stop] = var[start:stop] * np.sum(z * z, axis=(1, 2)) / (dof_multiplier * n)
    return out, 0


def _check_draw_inputs(true_variance: float, n: int, dof_multiplier: int) -> None:
    if not true_variance > 0.0:
        raise DomainError(
            "true_variance must be positive", details={"true_variance": true_variance}
        )
    if n < 2:
        raise DomainError("n must be at least 2", details={"n": n})
    if dof_multiplier not in (1, 2):
        raise DomainError(
            "dof_multiplier must be 1 (real) or 2 (complex)",
            details={"dof_multiplier": dof_multiplier},
        )


@overload
def draw_sample_variance(
    true_variance: float,
    n: int,
    mode: SampleMode,
    dof_multiplier: int,
    rng: np.random.Generator,
    size: None = None,
) -> float: ...


@overload
def draw_sample_variance(
    true_variance: float,
    n: int,
    mode: SampleMode,
    dof_multiplier: int,
    rng: np.random.Generator,
    size: int,
) -> FloatArray: ...


def draw_sample_variance(
    true_variance: float,
    n: int,
    mode: SampleMode,
    dof_multiplier: int,
    rng: np.random.Generator,
    size: Optional[int] = None,
) -> float | FloatArray:
    """
    Draw the sample variance of one (or `size`) bit intervals.

    Raises:
        DomainError: On nonpositive variance, n < 2 or an unknown dof multiplier
    """
    _check_draw_inputs(true_variance, n, dof_multiplier)
    count = 1 if size is None else size
    draws, _ = realize_variances(np.full(count, true_variance), n, mode, dof_multiplier, rng)
    return float(draws[0]) if size is None else draws


def draw_kljn_block(
    voltage_variance: float,
    current_variance: Optional[float],
    n: int,
    rng: np.random.Generator,
) -> KljnSampleBlock:
    """Raw voltage (and optionally current) samples of one KLJN bit interval."""
    _check_draw_inputs(voltage_variance, n, 1)
    voltage = rng.normal(0.0, math.sqrt(voltage_variance), n)
    current = None
    if current_variance is not None:
        _check_draw_inputs(current_variance, n, 1)
        current = rng.normal(0.0, math.sqrt(current_variance), n)
    return KljnSampleBlock(voltage_samples=voltage, current_samples=current)


def draw_thermod_block(variance: float, n: int, rng: np.random.Generator) -> ThermodSampleBlock:
    """N complex samples with independent I/Q components of variance `variance`/2 each."""
    _check_draw_inputs(variance, n, 2)
    return ThermodSampleBlock(complex_samples=rng.normal(0.0, math.sqrt(variance / 2.0), (n, 2)))


def binomial_halfwidth(p: float, n: int, sigmas: Optional[float] = None) -> float:
    """k-sigma half-width of a binomial proportion estimate; NaN when n is 0."""
    if n <= 0:
        return math.nan
    k = settings.CONFIDENCE_SIGMAS if sigmas is None else sigmas
    return k * math.sqrt(max(p * (1.0 - p), 0.0) / n)
