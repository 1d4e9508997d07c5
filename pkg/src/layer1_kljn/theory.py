"""
📁 File: src/layer1_kljn/theory.py
Layer: Layer 1 (KLJN scheme)
Purpose: Closed-form bit error probabilities of the four KLJN detectors
Depends on: numpy, src/layer0_physics/gaussian, src/layer1_kljn/models
Used by: Layer 3 (simulation oracles), Layer 4 (optimization), CLI

All expressions use the Gaussian model of the sample variance,
sigma_hat^2 ~ N(sigma_i^2, 2 sigma_i^4 / N), and normalized thresholds, so they
depend only on alpha, N and the thresholds.

The *_terms functions are array-valued building blocks shared with the grid
optimizer; the scalar evaluators validate their inputs and wrap them.
"""

import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.layer0_physics.gaussian import q_function
from src.layer1_kljn.models import (
    CurrentThresholds,
    DetectorKind,
    ErrorEvents,
    KljnConfig,
    VoltageThresholds,
)
from src.shared.errors import DomainError, ThresholdError

FloatArray = NDArray[np.float64]


# ==========================================
# ARRAY BUILDING BLOCKS
# ==========================================

def voltage_terms(
    alpha: float, n: int, beta: ArrayLike, kappa: ArrayLike
) -> tuple[FloatArray, FloatArray, FloatArray, FloatArray]:
    """Voltage error events (00->01, 11->10, 01->00, 10->11) on arrays of thresholds."""
    s = math.sqrt(2.0 / n)
    v01 = 2.0 * alpha / (1.0 + alpha)
    b = np.asarray(beta, dtype=np.float64)
    k = np.asarray(kappa, dtype=np.float64)
    return (
        q_function((b - 1.0) / s),
        q_function((alpha - k) / (alpha * s)),
        q_function((v01 - b) / (v01 * s)),
        q_function((k - v01) / (v01 * s)),
    )


def current_terms(
    alpha: float, n: int, eta: ArrayLike, xi: ArrayLike
) -> tuple[FloatArray, FloatArray, FloatArray, FloatArray]:
    """Current error events (00->01, 11->10, 01->00, 10->11) on arrays of thresholds."""
    s = math.sqrt(2.0 / n)
    c01 = 2.0 / (1.0 + alpha)
    c11 = 1.0 / alpha
    e = np.asarray(eta, dtype=np.float64)
    x = np.asarray(xi, dtype=np.float64)
    return (
        q_function((1.0 - x) / s),
        q_function((e - c11) / (c11 * s)),
        q_function((x - c01) / (c01 * s)),
        q_function((c01 - e) / (c01 * s)),
    )


def ndi_correct_terms(
    alpha: float,
    n: int,
    beta: ArrayLike,
    kappa: ArrayLike,
    eta: ArrayLike,
    xi: ArrayLike,
) -> tuple[FloatArray, FloatArray, FloatArray, FloatArray]:
    """
    Joint-correct probabilities of ND-I for Alice in cases 00, 11, 01, 10.

    Voltage and current realizations are independent, so each case is a product
    of one voltage and one current probability. Cases 00 and 01 involve only
    (beta, xi); cases 11 and 10 only (kappa, eta).
    """
    s = math.sqrt(2.0 / n)
    v01 = 2.0 * alpha / (1.0 + alpha)
    c01 = 2.0 / (1.0 + alpha)
    c11 = 1.0 / alpha
    b = np.asarray(beta, dtype=np.float64)
    k = np.asarray(kappa, dtype=np.float64)
    e = np.asarray(eta, dtype=np.float64)
    x = np.asarray(xi, dtype=np.float64)
    return (
        q_function((1.0 - b) / s) * q_function((x - 1.0) / s),
        q_function((k - alpha) / (alpha * s)) * q_function((c11 - e) / (c11 * s)),
        q_function((b - v01) / (v01 * s)) * q_function((c01 - x) / (c01 * s)),
        q_function((v01 - k) / (v01 * s)) * q_function((e - c01) / (c01 * s)),
    )


def ndii_terms(
    alpha: float, n: int, kappa: ArrayLike, xi: ArrayLike
) -> tuple[FloatArray, FloatArray, FloatArray, FloatArray]:
    """
    ND-II error events: current-based for own bit 0, voltage-based for own bit 1.

    Order is (00->01 current, 11->10 voltage, 01->00 current, 10->11 voltage);
    beta and eta never enter.
    """
    s = math.sqrt(2.0 / n)
    v01 = 2.0 * alpha / (1.0 + alpha)
    c01 = 2.0 / (1.0 + alpha)
    k = np.asarray(kappa, dtype=np.float64)
    x = np.asarray(xi, dtype=np.float64)
    return (
        q_function((1.0 - x) / s),
        q_function((alpha - k) / (alpha * s)),
        q_function((x - c01) / (c01 * s)),
        q_function((k - v01) / (v01 * s)),
    )


# ==========================================
# SCALAR EVALUATORS
# ==========================================

def voltage_error_events(cfg: KljnConfig, th: VoltageThresholds) -> ErrorEvents:
    """Per-event error probabilities of the classical voltage detector."""
    th.check(cfg.alpha)
    terms = voltage_terms(cfg.alpha, cfg.n_samples, th.beta, th.kappa)
    return ErrorEvents(**dict(zip(("p00_01", "p11_10", "p01_00", "p10_11"), map(float, terms))))


def current_error_events(cfg: KljnConfig, th: CurrentThresholds) -> ErrorEvents:
    """Per-event error probabilities of the classical current detector."""
    th.check(cfg.alpha)
    terms = current_terms(cfg.alpha, cfg.n_samples, th.eta, th.xi)
    return ErrorEvents(**dict(zip(("p00_01", "p11_10", "p01_00", "p10_11"), map(float, terms))))


def bep_voltage(cfg: KljnConfig, th: VoltageThresholds) -> float:
    """
    BEP of the classical voltage detector: the average of the four error events.

    Raises:
        ThresholdError: If 1 < beta < 2a/(1+a) < kappa < a is violated
    """
    return voltage_error_events(cfg, th).bep


def bep_voltage_approx(cfg: KljnConfig, beta: float, large_alpha: bool = False) -> float:
    """
    Two-term approximation keeping only the dominant 00-related events.

    With large_alpha the 01 variance 2a/(1+a) is replaced by its limit 2, which
    at beta = 4/3 gives exactly 0.5 * Q(1 / (3 sqrt(2/N))).

    Args:
        cfg: Scheme configuration
        beta: Normalized lower threshold, 1 < beta < 2a/(1+a)
        large_alpha: Use the alpha >> 1 reduction

    Raises:
        ThresholdError: If beta is out of range
    """
    v01 = 2.0 * cfg.alpha / (1.0 + cfg.alpha)
    if not (1.0 < beta < v01):
        raise ThresholdError("beta", beta, 1.0, v01)
    mid = 2.0 if large_alpha else v01
    s = cfg.spread
    return 0.25 * (q_function((beta - 1.0) / s) + q_function((mid - beta) / (mid * s)))


def bep_current(cfg: KljnConfig, th: CurrentThresholds) -> float:
    """
    BEP of the classical current detector.

    Raises:
        ThresholdError: If 1/a < eta < 2/(1+a) < xi < 1 is violated
    """
    return current_error_events(cfg, th).bep


def bep_current_approx(cfg: KljnConfig, eta: float, large_alpha: bool = False) -> float:
    """
    Two-term approximation keeping the dominant 11-related current events.

    With large_alpha the 01 current variance 2/(1+a) becomes 2/a; at
    eta = 4/(3a) the result equals the voltage-side uniform-threshold value.

    Raises:
        ThresholdError: If eta is outside (1/a, 2/(1+a))
    """
    c01 = 2.0 / (1.0 + cfg.alpha)
    c11 = 1.0 / cfg.alpha
    if not (c11 < eta < c01):
        raise ThresholdError("eta", eta, c11, c01)
    mid = 2.0 / cfg.alpha if large_alpha else c01
    s = cfg.spread
    return 0.25 * (q_function((eta - c11) / (c11 * s)) + q_function((mid - eta) / (mid * s)))


def prob_correct_ndi(
    cfg: KljnConfig, vth: VoltageThresholds, cth: CurrentThresholds
) -> float:
    """
    Probability that ND-I's voltage and current decisions are both correct.

    Raises:
        ThresholdError: If either threshold set is infeasible for cfg.alpha
    """
    vth.check(cfg.alpha)
    cth.check(cfg.alpha)
    terms = ndi_correct_terms(cfg.alpha, cfg.n_samples, vth.beta, vth.kappa, cth.eta, cth.xi)
    return 0.25 * float(sum(terms))


def bep_ndi(cfg: KljnConfig, vth: VoltageThresholds, cth: CurrentThresholds) -> float:
    """ND-I BEP, 0.5 * (1 - P_c); half of a symbol error is a bit error."""
    return 0.5 * (1.0 - prob_correct_ndi(cfg, vth, cth))


def _check_ndii(cfg: KljnConfig, kappa: float, xi: float) -> None:
    v01 = 2.0 * cfg.alpha / (1.0 + cfg.alpha)
    c01 = 2.0 / (1.0 + cfg.alpha)
    if not (v01 < kappa < cfg.alpha):
        raise ThresholdError("kappa", kappa, v01, cfg.alpha)
    if not (c01 < xi < 1.0):
        raise ThresholdError("xi", xi, c01, 1.0)


def ndii_error_events(cfg: KljnConfig, kappa: float, xi: float) -> ErrorEvents:
    """Per-event error probabilities of ND-II (current for own bit 0, voltage for 1)."""
    _check_ndii(cfg, kappa, xi)
    terms = ndii_terms(cfg.alpha, cfg.n_samples, kappa, xi)
    return ErrorEvents(**dict(zip(("p00_01", "p11_10", "p01_00", "p10_11"), map(float, terms))))


def bep_ndii(cfg: KljnConfig, kappa: float, xi: float) -> float:
    """
    BEP of ND-II. Only the upper thresholds matter; xi = kappa / alpha equalizes
    the bit-0 and bit-1 error probabilities.

    Raises:
        ThresholdError: If kappa or xi is outside its feasible interval
    """
    return ndii_error_events(cfg, kappa, xi).bep


# ==========================================
# SAMPLING LIMIT AND SEED THRESHOLDS
# ==========================================

def max_samples_per_bit(bit_duration: float, bandwidth_df: float) -> int:
    """
    Largest number of independent noise samples per bit, floor(2 * T_b * df).

    Raises:
        DomainError: If either input is nonpositive
    """
    if not (bit_duration > 0.0 and bandwidth_df > 0.0):
        raise DomainError(
            "bit_duration and bandwidth_df must be positive",
            details={"bit_duration": bit_duration, "bandwidth_df": bandwidth_df},
        )
    # round away float noise such as 99.99999999999999 before flooring
    return math.floor(round(2.0 * bit_duration * bandwidth_df, 9))


def seed_voltage_thresholds(alpha: float) -> VoltageThresholds:
    """
    Analytic starting thresholds: beta = 4/3 (uniform bit-0/bit-1 error in the
    large-alpha limit) when feasible, kappa midway between the 01 and 11 variances.
    """
    v01 = 2.0 * alpha / (1.0 + alpha)
    beta = 4.0 / 3.0 if 4.0 / 3.0 < v01 else 0.5 * (1.0 + v01)
    return VoltageThresholds(beta=beta, kappa=0.5 * (v01 + alpha))


def seed_current_thresholds(alpha: float) -> CurrentThresholds:
    """Current counterpart of the seed: eta = 4/(3a) when feasible, xi = kappa_seed / a."""
    c01 = 2.0 / (1.0 + alpha)
    c11 = 1.0 / alpha
    eta = 4.0 / (3.0 * alpha) if c11 < 4.0 / (3.0 * alpha) < c01 else 0.5 * (c11 + c01)
    return CurrentThresholds(eta=eta, xi=seed_voltage_thresholds(alpha).kappa / alpha)


def ndii_thresholds(
    alpha: float, kappa: float, xi: float
) -> tuple[VoltageThresholds, CurrentThresholds]:
    """Full threshold sets for ND-II; the unused lower thresholds get seed values."""
    vth = VoltageThresholds(beta=seed_voltage_thresholds(alpha).beta, kappa=kappa)
    cth = CurrentThresholds(eta=seed_current_thresholds(alpha).eta, xi=xi)
    return vth.check(alpha), cth.check(alpha)


def bep_for_detector(
    cfg: KljnConfig,
    detector: DetectorKind,
    vth: Optional[VoltageThresholds],
    cth: Optional[CurrentThresholds],
) -> float:
    """
    Closed-form BEP of any detector; ND-II reads only vth.kappa and cth.xi.

    Raises:
        DomainError: If a threshold set the detector needs is missing
        ThresholdError: If a threshold is infeasible
    """
    needs_v = detector != DetectorKind.CLASSICAL_CURRENT
    needs_c = detector != DetectorKind.CLASSICAL_VOLTAGE
    if (needs_v and vth is None) or (needs_c and cth is None):
        raise DomainError(
            f"Detector '{detector.value}' is missing thresholds",
            details={"voltage": vth is not None, "current": cth is not None},
        )
    if detector == DetectorKind.CLASSICAL_VOLTAGE:
        return bep_voltage(cfg, vth)
    if detector == DetectorKind.CLASSICAL_CURRENT:
        return bep_current(cfg, cth)
    if detector == DetectorKind.NEW_DETECTOR_I:
        return bep_ndi(cfg, vth, cth)
    return bep_ndii(cfg, vth.kappa, cth.xi)
