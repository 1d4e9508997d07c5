"""
📁 File: src/layer4_optimization/kljn_search.py
Layer: Layer 4 (Optimization)
Purpose: Exhaustive grid search of KLJN detector thresholds
Depends on: numpy, Layer 1 (KLJN theory), src/layer4_optimization/grid
Used by: CLI (kljn-optimize, figure reproduction)

Every detector BEP is a sum of terms that each involve a subset of the
thresholds, so the product grid splits into independent blocks:

    classical voltage   {beta} + {kappa}
    classical current   {eta} + {xi}
    ND-I                {beta, xi} + {kappa, eta}
    ND-II               {kappa} + {xi}      (reduced: {kappa}, xi = kappa / alpha)

Minimizing each block over its own product lattice and adding the minima gives
exactly the minimum over the full product, which keeps the four-dimensional
ND-I search at 0.001 resolution tractable. Optional coarse-to-fine mode runs a
coarse pass per block, then the fine lattice within one coarse step of the
coarse winner.
"""

import math
from collections.abc import Callable
from typing import NamedTuple, Optional

import numpy as np
from numpy.typing import ArrayLike

from src.layer1_kljn.models import CurrentThresholds, DetectorKind, KljnConfig, VoltageThresholds
from src.layer1_kljn.theory import (
    bep_current,
    bep_ndi,
    bep_ndii,
    bep_voltage,
    current_terms,
    ndi_correct_terms,
    ndii_terms,
    voltage_terms,
)
from src.layer4_optimization.grid import check_grid, default_grid, feasible_interval
from src.layer4_optimization.models import GridSpec, SweepResult, ThresholdSearchResult
from src.shared.config import get_settings
from src.shared.errors import GridError
from src.shared.logger import get_logger, log_optimization

logger = get_logger(__name__)
settings = get_settings()


class _Block(NamedTuple):
    names: tuple[str, ...]
    objective: Callable[..., np.ndarray]


class _BlockResult(NamedTuple):
    points: list[np.ndarray]
    values: np.ndarray
    best: dict[str, float]
    minimum: float


def _objective_blocks(
    detector: DetectorKind, alpha: float, n: int, reduce_ndii: bool
) -> tuple[list[_Block], float]:
    """Separable blocks of the detector BEP and its additive constant."""
    # Each block reads only the terms of its own thresholds; the other
    # argument slots are filled with the block's arrays and ignored.
    if detector == DetectorKind.CLASSICAL_VOLTAGE:

        def beta_block(b: np.ndarray) -> np.ndarray:
            t = voltage_terms(alpha, n, b, b)
            return 0.25 * (t[0] + t[2])

        def kappa_block(k: np.ndarray) -> np.ndarray:
            t = voltage_terms(alpha, n, k, k)
            return 0.25 * (t[1] + t[3])

        return [_Block(("beta",), beta_block), _Block(("kappa",), kappa_block)], 0.0

    if detector == DetectorKind.CLASSICAL_CURRENT:

        def eta_block(e: np.ndarray) -> np.ndarray:
            t = current_terms(alpha, n, e, e)
            return 0.25 * (t[1] + t[3])

        def xi_block(x: np.ndarray) -> np.ndarray:
            t = current_terms(alpha, n, x, x)
            return 0.25 * (t[0] + t[2])

        return [_Block(("eta",), eta_block), _Block(("xi",), xi_block)], 0.0

    if detector == DetectorKind.NEW_DETECTOR_I:
        # BEP = 0.5 * (1 - P_c) with P_c the mean of four joint-correct terms

        def beta_xi_block(b: np.ndarray, x: np.ndarray) -> np.ndarray:
            t = ndi_correct_terms(alpha, n, b, b, x, x)
            return -0.125 * (t[0] + t[2])

        def kappa_eta_block(k: np.ndarray, e: np.ndarray) -> np.ndarray:
            t = ndi_correct_terms(alpha, n, k, k, e, e)
            return -0.125 * (t[1] + t[3])

        return [
            _Block(("beta", "xi"), beta_xi_block),
            _Block(("kappa", "eta"), kappa_eta_block),
        ], 0.5

    if reduce_ndii:

        def reduced_block(k: np.ndarray) -> np.ndarray:
            return 0.25 * sum(ndii_terms(alpha, n, k, k / alpha))

        return [_Block(("kappa",), reduced_block)], 0.0

    def ndii_kappa_block(k: np.ndarray) -> np.ndarray:
        t = ndii_terms(alpha, n, k, k / alpha)
        return 0.25 * (t[1] + t[3])

    def ndii_xi_block(x: np.ndarray) -> np.ndarray:
        t = ndii_terms(alpha, n, x * alpha, x)
        return 0.25 * (t[0] + t[2])

    return [_Block(("kappa",), ndii_kappa_block), _Block(("xi",), ndii_xi_block)], 0.0


def _evaluate(block: _Block, points: list[np.ndarray]) -> _BlockResult:
    mesh = np.meshgrid(*points, indexing="ij")
    values = np.asarray(block.objective(*mesh), dtype=np.float64)
    index = np.unravel_index(int(np.argmin(values)), values.shape)
    return _BlockResult(
        points=points,
        values=values,
        best={name: float(points[i][index[i]]) for i, name in enumerate(block.names)},
        minimum=float(values[index]),
    )


def _coarse_stride(lattice: np.ndarray, step: float) -> int:
    """Fine-lattice stride of the coarse pass: COARSE_STEP, or a quarter of a narrow axis."""
    width = float(lattice[-1] - lattice[0])
    coarse = min(settings.COARSE_STEP, width / 4.0)
    return max(1, int(round(coarse / step)))


def _block_points(block: _Block, grid: GridSpec) -> int:
    return math.prod(grid.axes[name].size for name in block.names)


def _search_block(block: _Block, grid: GridSpec, two_pass: bool) -> _BlockResult:
    lattices = [grid.axes[name].points() for name in block.names]
    if not two_pass:
        return _evaluate(block, lattices)

    strides = [_coarse_stride(lat, grid.axes[name].step) for lat, name in zip(lattices, block.names)]
    coarse = _evaluate(block, [lat[::s] for lat, s in zip(lattices, strides)])

    window = []
    for lat, stride, name in zip(lattices, strides, block.names):
        centre = int(np.searchsorted(lat, coarse.best[name]))
        lo = max(0, centre - stride)
        hi = min(len(lat), centre + stride + 1)
        window.append(lat[lo:hi])
    return _evaluate(block, window)


def _exact_bep(
    cfg: KljnConfig, detector: DetectorKind, best: dict[str, float], reduce_ndii: bool
) -> float:
    if detector == DetectorKind.CLASSICAL_VOLTAGE:
        return bep_voltage(cfg, VoltageThresholds(beta=best["beta"], kappa=best["kappa"]))
    if detector == DetectorKind.CLASSICAL_CURRENT:
        return bep_current(cfg, CurrentThresholds(eta=best["eta"], xi=best["xi"]))
    if detector == DetectorKind.NEW_DETECTOR_I:
        return bep_ndi(
            cfg,
            VoltageThresholds(beta=best["beta"], kappa=best["kappa"]),
            CurrentThresholds(eta=best["eta"], xi=best["xi"]),
        )
    xi = best["kappa"] / cfg.alpha if reduce_ndii else best["xi"]
    return bep_ndii(cfg, best["kappa"], xi)


def optimize_kljn_thresholds(
    cfg: KljnConfig,
    detector: DetectorKind,
    grid: Optional[GridSpec] = None,
    reduce_ndii: bool = False,
    two_pass: Optional[bool] = None,
) -> ThresholdSearchResult:
    """
    Grid search of a detector's thresholds against its closed-form BEP.

    Args:
        cfg: Scheme parameters
        detector: Detector whose thresholds are searched
        grid: Search grid (default: interior lattice at FINE_STEP)
        reduce_ndii: ND-II only, search kappa alone with xi = kappa / alpha
        two_pass: Coarse-to-fine mode; None enables it when the largest block lattice
            exceeds GRID_TWO_PASS_THRESHOLD points

    Returns:
        Winning thresholds (ties to the lexicographically smallest), their BEP and
        the profile along the first searched threshold

    Raises:
        GridError: If the grid does not match the detector or leaves the feasible region
    """
    grid = grid or default_grid(cfg, detector, reduce_ndii=reduce_ndii)
    check_grid(grid, cfg.alpha, detector, reduce_ndii)
    blocks, constant = _objective_blocks(detector, cfg.alpha, cfg.n_samples, reduce_ndii)
    block_points = max(_block_points(block, grid) for block in blocks)
    use_two_pass = block_points > settings.GRID_TWO_PASS_THRESHOLD if two_pass is None else two_pass
    results = [_search_block(block, grid, use_two_pass) for block in blocks]

    merged = {name: value for result in results for name, value in result.best.items()}
    best = {name: merged[name] for name in grid.axes}

    # profile along the first axis: min over the rest of its block plus the other blocks' minima
    head = results[0]
    offset = constant + sum(result.minimum for result in results[1:])
    head_profile = head.values.reshape(len(head.points[0]), -1).min(axis=1)
    first = blocks[0].names[0]
    profile = SweepResult.from_values(
        [first], [head.points[0]], head_profile + offset, label=f"N={cfg.n_samples}"
    )

    bep = _exact_bep(cfg, detector, best, reduce_ndii)
    log_optimization(
        logger,
        detector=detector.value,
        grid_points=grid.total_points,
        block_points=block_points,
        best=best,
        best_bep=bep,
        two_pass=use_two_pass,
    )
    return ThresholdSearchResult(
        detector=detector,
        alpha=cfg.alpha,
        n_samples=cfg.n_samples,
        thresholds=best,
        bep=bep,
        profile=profile,
        two_pass=use_two_pass,
        grid_points=grid.total_points,
    )


def _require_inside(name: str, values: np.ndarray, alpha: float) -> None:
    lower, upper = feasible_interval(name, alpha)
    if values.size == 0 or not (lower < values.min() and values.max() < upper):
        raise GridError(
            name,
            f"grid must lie inside ({lower:.6g}, {upper:.6g})",
            details={"lower": lower, "upper": upper},
        )


def sweep_beta_kappa_surface(
    cfg: KljnConfig, beta_grid: ArrayLike, kappa_grid: ArrayLike
) -> SweepResult:
    """
    Classical voltage BEP on the full (beta, kappa) product grid.

    Raises:
        GridError: If either grid leaves its feasibility interval
    """
    betas = np.asarray(beta_grid, dtype=np.float64)
    kappas = np.asarray(kappa_grid, dtype=np.float64)
    _require_inside("beta", betas, cfg.alpha)
    _require_inside("kappa", kappas, cfg.alpha)
    b, k = np.meshgrid(betas, kappas, indexing="ij")
    surface = 0.25 * sum(voltage_terms(cfg.alpha, cfg.n_samples, b, k))
    return SweepResult.from_values(
        ["beta", "kappa"], [betas, kappas], surface, label=f"N={cfg.n_samples}"
    )
