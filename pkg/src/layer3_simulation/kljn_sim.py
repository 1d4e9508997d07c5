"""
📁 File: src/layer3_simulation/kljn_sim.py
Layer: Layer 3 (Simulation)
Purpose: Monte Carlo simulation of the KLJN bit exchange, all four detectors and Eve
Depends on: numpy, Layer 1 (KLJN), src/layer3_simulation/*
Used by: CLI (kljn-sim, figure reproduction)

Per chunk of m bit intervals the stream is consumed in a fixed order:
1. bit pairs, shape (m, 2)
2. voltage sample variances (gaussian-fit: m normals; raw-samples: m x N)
3. current sample variances, only for detectors that measure current
4. Eve's ordering coins, shape (m,)
5. ND-I conflict coins, shape (m, 2), only with the random_guess policy

Voltage and current realizations are independent. Both parties observe the
same line realization; each applies its own decision rule.
"""

import time
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.layer1_kljn.detectors import decide_current, decide_voltage, eve_classify
from src.layer1_kljn.models import (
    CurrentThresholds,
    DetectorKind,
    EveVerdict,
    KljnConfig,
    VoltageThresholds,
)
from src.layer1_kljn.theory import seed_voltage_thresholds
from src.layer3_simulation.engine import ChunkedRunner
from src.layer3_simulation.estimators import realize_variances
from src.layer3_simulation.models import NdiPolicy, SampleMode, SimOutcome, SimTally, StopRule
from src.layer3_simulation.rng import chunk_rng
from src.shared.errors import ConfigurationError
from src.shared.logger import get_logger, log_simulation

logger = get_logger(__name__)

_NEEDS_VOLTAGE = {
    DetectorKind.CLASSICAL_VOLTAGE,
    DetectorKind.NEW_DETECTOR_I,
    DetectorKind.NEW_DETECTOR_II,
}
_NEEDS_CURRENT = {
    DetectorKind.CLASSICAL_CURRENT,
    DetectorKind.NEW_DETECTOR_I,
    DetectorKind.NEW_DETECTOR_II,
}


class KljnJob(BaseModel):
    """Everything a worker needs to simulate one KLJN chunk."""

    model_config = ConfigDict(frozen=True)

    cfg: KljnConfig
    detector: DetectorKind
    vth: Optional[VoltageThresholds]
    cth: Optional[CurrentThresholds]
    eve_th: VoltageThresholds
    mode: SampleMode
    ndi_policy: NdiPolicy
    seed: int


def _decide(
    job: KljnJob,
    own: np.ndarray,
    sigma_v: np.ndarray,
    s_c: Optional[np.ndarray],
) -> tuple[np.ndarray, Optional[np.ndarray]]:
    """Partner-bit decisions of one party, plus the ND-I conflict mask."""
    if job.detector == DetectorKind.CLASSICAL_VOLTAGE:
        return decide_voltage(sigma_v, own, job.vth), None
    if job.detector == DetectorKind.CLASSICAL_CURRENT:
        return decide_current(s_c, own, job.cth), None
    by_voltage = decide_voltage(sigma_v, own, job.vth)
    by_current = decide_current(s_c, own, job.cth)
    if job.detector == DetectorKind.NEW_DETECTOR_II:
        # current measurement for own bit 0, voltage for own bit 1
        return np.where(own == 0, by_current, by_voltage), None
    return by_voltage, by_voltage != by_current


def simulate_kljn_chunk(job: KljnJob, index: int, m: int) -> SimTally:
    """Simulate m bit intervals on the stream of chunk `index`."""
    rng = chunk_rng(job.seed, index)
    variances = job.cfg.variances
    n = job.cfg.n_samples

    bits = rng.integers(0, 2, size=(m, 2), dtype=np.int8)
    alice, bob = bits[:, 0], bits[:, 1]
    high = alice + bob

    sigma_v, clamps = realize_variances(
        np.asarray(variances.voltage_table())[high], n, job.mode, 1, rng
    )
    s_c = None
    if job.detector in _NEEDS_CURRENT:
        s_c, clamps_c = realize_variances(
            np.asarray(variances.current_table())[high], n, job.mode, 1, rng
        )
        clamps += clamps_c

    eve_coin = rng.integers(0, 2, size=m, dtype=np.int8)
    guess = None
    if job.detector == DetectorKind.NEW_DETECTOR_I and job.ndi_policy == NdiPolicy.RANDOM_GUESS:
        guess = rng.integers(0, 2, size=(m, 2), dtype=np.int8)

    errors = []
    discards = []
    for party, (own, partner) in enumerate(((alice, bob), (bob, alice))):
        decided, conflict = _decide(job, own, sigma_v, s_c)
        wrong = decided != partner
        if conflict is None:
            errors.append(int(np.count_nonzero(wrong)))
            discards.append(0)
            continue
        discards.append(int(np.count_nonzero(conflict)))
        if job.ndi_policy == NdiPolicy.DISCARD:
            wrong = wrong & ~conflict
        elif job.ndi_policy == NdiPolicy.FLAG_AS_ERROR:
            wrong = wrong | conflict
        else:
            wrong = np.where(conflict, guess[:, party] != partner, wrong)
        errors.append(int(np.count_nonzero(wrong)))

    # Eve reads the line voltage only; on Secure she guesses who holds the 1
    verdict = eve_classify(sigma_v, job.eve_th)
    secure = verdict == EveVerdict.SECURE
    hits = secure & (high == 1) & (eve_coin == alice)

    return SimTally(
        bits=m,
        errors_alice=errors[0],
        errors_bob=errors[1],
        discarded=discards[0],
        discarded_bob=discards[1],
        eve_secure=int(np.count_nonzero(secure)),
        eve_secure_hits=int(np.count_nonzero(hits)),
        clamp_events=clamps,
        chunks=1,
    )


def _check_thresholds(
    cfg: KljnConfig,
    detector: DetectorKind,
    vth: Optional[VoltageThresholds],
    cth: Optional[CurrentThresholds],
) -> None:
    if detector in _NEEDS_VOLTAGE and vth is None:
        raise ConfigurationError(
            f"Detector '{detector.value}' needs voltage thresholds", config_key="beta"
        )
    if detector in _NEEDS_CURRENT and cth is None:
        raise ConfigurationError(
            f"Detector '{detector.value}' needs current thresholds", config_key="xi"
        )
    if vth is not None:
        vth.check(cfg.alpha)
    if cth is not None:
        cth.check(cfg.alpha)


def simulate_kljn(
    cfg: KljnConfig,
    detector: DetectorKind,
    vth: Optional[VoltageThresholds],
    cth: Optional[CurrentThresholds],
    mode: SampleMode,
    stop: StopRule,
    seed: int,
    ndi_policy: NdiPolicy = NdiPolicy.DISCARD,
    chunk_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> SimOutcome:
    """
    Monte Carlo BER of one KLJN detector.

    Each bit interval draws a uniform bit pair, realizes the line's voltage (and
    where needed current) sample variance at the case variance, and lets both
    parties decide. ND-II uses current for own bit 0 and voltage for own bit 1,
    so only xi and kappa take effect. Eve classifies every voltage realization
    with `vth`, or with the analytic seed thresholds when none are given.

    Args:
        cfg: Scheme parameters
        detector: Detector used by both parties
        vth: Voltage thresholds (classical voltage, ND-I, ND-II)
        cth: Current thresholds (classical current, ND-I, ND-II)
        mode: Sample-variance realization mode
        stop: Stop rule
        seed: Master seed
        ndi_policy: ND-I handling of conflicting voltage/current readings
        chunk_size: Bits per RNG chunk (defaults to settings)
        workers: Worker processes (defaults to settings)

    Returns:
        SimOutcome, identical for identical inputs regardless of `workers`

    Raises:
        ConfigurationError: If the detector's thresholds are missing
        ThresholdError: If supplied thresholds are infeasible for cfg.alpha
    """
    _check_thresholds(cfg, detector, vth, cth)
    runner = ChunkedRunner(chunk_size=chunk_size, workers=workers)
    job = KljnJob(
        cfg=cfg,
        detector=detector,
        vth=vth,
        cth=cth,
        eve_th=vth if vth is not None else seed_voltage_thresholds(cfg.alpha),
        mode=mode,
        ndi_policy=ndi_policy,
        seed=seed,
    )

    start = time.perf_counter()
    tally = runner.run(simulate_kljn_chunk, job, stop)
    outcome = SimOutcome.from_tally(
        tally,
        scheme="kljn",
        detector=detector.value,
        mode=mode,
        seed=seed,
        chunk_size=runner.chunk_size,
        ndi_policy=ndi_policy if detector == DetectorKind.NEW_DETECTOR_I else None,
    )
    if tally.clamp_events:
        logger.warning("gaussian_fit_clamped", clamp_events=tally.clamp_events, n=cfg.n_samples)
    log_simulation(
        logger,
        scheme="kljn",
        bits_simulated=outcome.bits_simulated,
        ber=outcome.ber,
        chunks=outcome.chunks,
        elapsed_ms=(time.perf_counter() - start) * 1000,
        discarded=outcome.discarded if detector == DetectorKind.NEW_DETECTOR_I else None,
    )
    return outcome
