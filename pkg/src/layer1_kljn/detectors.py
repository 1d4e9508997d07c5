"""
📁 File: src/layer1_kljn/detectors.py
Layer: Layer 1 (KLJN scheme)
Purpose: Per-sample decision rules of the legitimate parties and of Eve
Depends on: numpy, src/layer1_kljn/models
Used by: Layer 3 (simulation)

Decision rules:
- A party's own bit collapses the ternary variance partition to a binary rule:
  with own bit 0 only the lower threshold matters, with own bit 1 only the upper.
- Values exactly on a threshold belong to the middle (01/10) region.
- All rules accept scalars or numpy arrays (simulation evaluates whole chunks).
"""

from typing import overload

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.layer1_kljn.models import CurrentThresholds, EveVerdict, VoltageThresholds

IntArray = NDArray[np.int8]


def _unwrap(result: NDArray[np.int8]) -> int | IntArray:
    if result.ndim == 0:
        return int(result)
    return result


@overload
def decide_voltage(sigma_hat: float, own_bit: int, th: VoltageThresholds) -> int: ...


@overload
def decide_voltage(sigma_hat: ArrayLike, own_bit: ArrayLike, th: VoltageThresholds) -> IntArray: ...


def decide_voltage(sigma_hat: ArrayLike, own_bit: ArrayLike, th: VoltageThresholds) -> int | IntArray:
    """
    Partner-bit decision from the normalized line-voltage sample variance.

    Voltage fluctuations grow with the number of high resistors, so with own
    bit 0 the partner is 0 iff sigma_hat < beta, and with own bit 1 the partner
    is 1 iff sigma_hat > kappa.

    Args:
        sigma_hat: Estimated voltage variance(s), normalized to the 00 case
        own_bit: The deciding party's own bit(s)
        th: Voltage thresholds (ordering validated on construction)

    Returns:
        Decided partner bit(s)
    """
    sigma = np.asarray(sigma_hat, dtype=np.float64)
    own = np.asarray(own_bit)
    partner = np.where(own == 0, sigma >= th.beta, sigma > th.kappa)
    return _unwrap(partner.astype(np.int8))


@overload
def decide_current(s_hat: float, own_bit: int, th: CurrentThresholds) -> int: ...


@overload
def decide_current(s_hat: ArrayLike, own_bit: ArrayLike, th: CurrentThresholds) -> IntArray: ...


def decide_current(s_hat: ArrayLike, own_bit: ArrayLike, th: CurrentThresholds) -> int | IntArray:
    """
    Partner-bit decision from the normalized loop-current sample variance.

    Current fluctuations shrink with the number of high resistors: with own bit 0
    the partner is 0 iff s_hat > xi, with own bit 1 the partner is 1 iff s_hat < eta.
    """
    s = np.asarray(s_hat, dtype=np.float64)
    own = np.asarray(own_bit)
    partner = np.where(own == 0, s <= th.xi, s < th.eta)
    return _unwrap(partner.astype(np.int8))


@overload
def eve_classify(sigma_hat: float, th: VoltageThresholds) -> EveVerdict: ...


@overload
def eve_classify(sigma_hat: NDArray[np.float64], th: VoltageThresholds) -> IntArray: ...


def eve_classify(sigma_hat: ArrayLike, th: VoltageThresholds) -> EveVerdict | IntArray:
    """
    Eve's ternary reading of the line voltage variance.

    Below beta she sees 00, above kappa 11, and the closed middle interval is a
    secure exchange whose bit ordering she cannot resolve.

    Returns:
        An EveVerdict for scalar input, otherwise an array of EveVerdict values
    """
    sigma = np.asarray(sigma_hat, dtype=np.float64)
    verdict = np.where(
        sigma < th.beta,
        EveVerdict.CASE_00,
        np.where(sigma > th.kappa, EveVerdict.CASE_11, EveVerdict.SECURE),
    ).astype(np.int8)
    if verdict.ndim == 0:
        return EveVerdict(int(verdict))
    return verdict
