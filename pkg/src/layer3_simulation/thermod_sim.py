"""
📁 File: src/layer3_simulation/thermod_sim.py
Layer: Layer 3 (Simulation)
Purpose: Monte Carlo simulation of the TherMod receiver
Depends on: numpy, Layer 2 (TherMod), src/layer3_simulation/*
Used by: CLI (thermod-sim, figure reproduction)

Alice is the transmitter and Bob the receiver: only Bob's errors are counted
and the Eve fields of the outcome stay zero. Per chunk the stream yields the
bits (m,) first, then the complex sample variances.
"""

import time
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.layer2_thermod.models import ThermodConfig, ThermodThreshold
from src.layer2_thermod.theory import decide_thermod, thermod_variances
from src.layer3_simulation.engine import ChunkedRunner
from src.layer3_simulation.estimators import realize_variances
from src.layer3_simulation.models import SampleMode, SimOutcome, SimTally, StopRule
from src.layer3_simulation.rng import chunk_rng
from src.shared.logger import get_logger, log_simulation

logger = get_logger(__name__)


class ThermodJob(BaseModel):
    model_config = ConfigDict(frozen=True)

    cfg: ThermodConfig
    th: ThermodThreshold
    mode: SampleMode
    seed: int


def simulate_thermod_chunk(job: ThermodJob, index: int, m: int) -> SimTally:
    rng = chunk_rng(job.seed, index)
    v = thermod_variances(job.cfg)
    bits = rng.integers(0, 2, size=m, dtype=np.int8)
    sigma_s, clamps = realize_variances(
        np.where(bits == 1, v.tilde1, v.tilde0), job.cfg.n_samples, job.mode, 2, rng
    )
    decided = decide_thermod(sigma_s, job.th)
    return SimTally(
        bits=m,
        errors_bob=int(np.count_nonzero(decided != bits)),
        clamp_events=clamps,
        chunks=1,
    )


def simulate_thermod(
    cfg: ThermodConfig,
    th: ThermodThreshold,
    mode: SampleMode,
    stop: StopRule,
    seed: int,
    chunk_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> SimOutcome:
    """
    Monte Carlo BER of the TherMod threshold receiver.

    Raises:
        ThresholdError: If chi is outside (1 + delta, 1 + alpha * delta)
    """
    th.check(cfg)
    runner = ChunkedRunner(chunk_size=chunk_size, workers=workers)
    job = ThermodJob(cfg=cfg, th=th, mode=mode, seed=seed)

    start = time.perf_counter()
    tally = runner.run(simulate_thermod_chunk, job, stop)
    outcome = SimOutcome.from_tally(
        tally, scheme="thermod", mode=mode, seed=seed, chunk_size=runner.chunk_size
    )
    log_simulation(
        logger,
        scheme="thermod",
        bits_simulated=outcome.bits_simulated,
        ber=outcome.ber,
        chunks=outcome.chunks,
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )
    return outcome
