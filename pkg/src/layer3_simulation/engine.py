"""
📁 File: src/layer3_simulation/engine.py
Layer: Layer 3 (Simulation)
Purpose: Chunked Monte Carlo runner with optional process parallelism
Depends on: concurrent.futures, src/layer3_simulation/models, src/layer3_simulation/rng
Used by: kljn_sim, thermod_sim

Execution contract:
- A run is a sequence of chunks; chunk i owns the stream chunk_rng(seed, i)
- Chunk tallies are merged strictly in index order and the stop rule is checked
  after every merge, so the outcome depends on (inputs, seed, chunk size) only
- With several workers chunks are computed in waves; chunks finishing past the
  stop point are dropped
"""

import time
from collections.abc import Callable
from concurrent.futures import Future, ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from typing import Any, Optional

from src.layer3_simulation.models import SimTally, StopRule
from src.layer3_simulation.rng import chunk_lengths
from src.shared.config import get_settings
from src.shared.errors import SimulationError, ThercomError
from src.shared.logger import get_logger

logger = get_logger(__name__)
settings = get_settings()

ChunkFn = Callable[[Any, int, int], SimTally]


def _run_chunk(chunk_fn: ChunkFn, job: Any, index: int, bits: int) -> SimTally:
    """Worker entry point; failures come back as a SimulationError naming the chunk."""
    try:
        return chunk_fn(job, index, bits)
    except ThercomError as exc:
        raise SimulationError(f"Chunk {index} failed: {exc.message}") from None
    except Exception as exc:  # noqa: BLE001 - worker errors must survive pickling
        raise SimulationError(f"Chunk {index} failed: {type(exc).__name__}: {exc}") from None


class ChunkedRunner:
    """
    Drives a chunk function until a stop rule is met.

    The chunk function must be a module-level callable so it can be shipped to
    worker processes together with its (picklable) job description.
    """

    def __init__(self, chunk_size: Optional[int] = None, workers: Optional[int] = None) -> None:
        self.chunk_size = chunk_size or settings.CHUNK_SIZE
        self.workers = workers or settings.WORKERS
        if self.chunk_size < 1 or self.workers < 1:
            raise SimulationError(
                "chunk_size and workers must be at least 1",
                details={"chunk_size": self.chunk_size, "workers": self.workers},
            )

    def run(self, chunk_fn: ChunkFn, job: Any, stop: StopRule) -> SimTally:
        """
        Execute chunks until stop.max_bits bits or stop.min_errors errors.

        Returns:
            Merged tally of all chunks up to and including the stopping one
        """
        start = time.perf_counter()
        lengths = chunk_lengths(stop.max_bits, self.chunk_size)
        if self.workers == 1:
            tally = self._run_serial(chunk_fn, job, stop, lengths)
        else:
            tally = self._run_parallel(chunk_fn, job, stop, lengths)
        logger.debug(
            "chunks_merged",
            chunks=tally.chunks,
            bits=tally.bits,
            workers=self.workers,
            elapsed_ms=round((time.perf_counter() - start) * 1000, 2),
        )
        return tally

    def _run_serial(
        self, chunk_fn: ChunkFn, job: Any, stop: StopRule, lengths: list[int]
    ) -> SimTally:
        tally = SimTally()
        for index, bits in enumerate(lengths):
            tally = tally.merge(_run_chunk(chunk_fn, job, index, bits))
            if stop.reached(tally.bits, tally.stop_errors):
                break
        return tally

    def _run_parallel(
        self, chunk_fn: ChunkFn, job: Any, stop: StopRule, lengths: list[int]
    ) -> SimTally:
        tally = SimTally()
        try:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                for wave_start in range(0, len(lengths), self.workers):
                    wave = lengths[wave_start : wave_start + self.workers]
                    futures: list[Future[SimTally]] = [
                        pool.submit(_run_chunk, chunk_fn, job, wave_start + offset, bits)
                        for offset, bits in enumerate(wave)
                    ]
                    for future in futures:
                        tally = tally.merge(future.result())
                        if stop.reached(tally.bits, tally.stop_errors):
                            for pending in futures:
                                pending.cancel()
                            return tally
        except BrokenProcessPool as exc:
            raise SimulationError(
                "Simulation worker pool crashed",
                details={"workers": self.workers, "reason": str(exc)},
            ) from exc
        return tally
