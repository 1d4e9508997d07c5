"""
📁 File: src/layer2_thermod/theory.py
Layer: Layer 2 (TherMod scheme)
Purpose: Receiver decision rule and closed-form bit error probabilities
Depends on: numpy, src/layer0_physics/gaussian, src/layer2_thermod/models
Used by: Layer 3 (simulation), Layer 4 (sweeps), CLI

The complex-sample estimator (1/N) sum |s_n|^2 has 2N real degrees of freedom,
so its Gaussian fit is N(tilde_i, tilde_i^2 / N): the relative spread is
1/sqrt(N), half the real-valued KLJN case.
"""

import math
from typing import overload

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.layer0_physics.gaussian import q_function
from src.layer2_thermod.models import ThermodConfig, ThermodThreshold, ThermodVariances


def thermod_variances(cfg: ThermodConfig) -> ThermodVariances:
    return ThermodVariances(tilde0=1.0 + cfg.delta, tilde1=1.0 + cfg.alpha * cfg.delta)


@overload
def decide_thermod(sigma_hat_s: float, th: ThermodThreshold) -> int: ...


@overload
def decide_thermod(sigma_hat_s: NDArray[np.float64], th: ThermodThreshold) -> NDArray[np.int8]: ...


def decide_thermod(sigma_hat_s: ArrayLike, th: ThermodThreshold) -> int | NDArray[np.int8]:
    """Bit 1 iff the estimated variance exceeds chi; ties go to bit 0."""
    bits = (np.asarray(sigma_hat_s, dtype=np.float64) > th.chi).astype(np.int8)
    if bits.ndim == 0:
        return int(bits)
    return bits


def uniform_chi(cfg: ThermodConfig) -> ThermodThreshold:
    """
    Threshold equalizing P(0 -> 1) and P(1 -> 0).

    Solves (chi - t0) / t0 = (t1 - chi) / t1, giving the harmonic-mean form
    2 * t0 * t1 / (t0 + t1) = 2(1+d)(1+ad) / (2 + d(1+a)).
    """
    v = thermod_variances(cfg)
    return ThermodThreshold(chi=2.0 * v.tilde0 * v.tilde1 / (v.tilde0 + v.tilde1))


def chi_terms(cfg: ThermodConfig, chi: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """P(0 -> 1) and P(1 -> 0) evaluated on an array of thresholds."""
    v = thermod_variances(cfg)
    root_n = math.sqrt(cfg.n_samples)
    c = np.asarray(chi, dtype=np.float64)
    return (
        q_function((c - v.tilde0) * root_n / v.tilde0),
        q_function((v.tilde1 - c) * root_n / v.tilde1),
    )


def thermod_error_events(cfg: ThermodConfig, th: ThermodThreshold) -> tuple[float, float]:
    """
    (P(0 -> 1), P(1 -> 0)) at threshold chi.

    Raises:
        ThresholdError: If chi is outside (1 + delta, 1 + alpha * delta)
    """
    th.check(cfg)
    p01, p10 = chi_terms(cfg, th.chi)
    return float(p01), float(p10)


def thermod_bep(cfg: ThermodConfig, th: ThermodThreshold) -> float:
    """
    BEP for equiprobable bits at threshold chi.

    Raises:
        ThresholdError: If chi is outside (1 + delta, 1 + alpha * delta)
    """
    p01, p10 = thermod_error_events(cfg, th)
    return 0.5 * (p01 + p10)


def uniform_argument(cfg: ThermodConfig) -> float:
    """Q-function argument sqrt(N) * d(a-1) / (2 + d(1+a)) at the uniform threshold."""
    d, a = cfg.delta, cfg.alpha
    return math.sqrt(cfg.n_samples) * d * (a - 1.0) / (2.0 + d * (1.0 + a))


def thermod_bep_uniform(cfg: ThermodConfig) -> float:
    """BEP at the uniform-error threshold."""
    return q_function(uniform_argument(cfg))


def thermod_bep_largealpha(cfg: ThermodConfig) -> float:
    """Large-alpha reduction Q(sqrt(N) * a d / (2 + a d)); tends to Q(sqrt(N)) once a d >> 1."""
    ad = cfg.alpha * cfg.delta
    return q_function(math.sqrt(cfg.n_samples) * ad / (2.0 + ad))
