"""
📁 File: src/layer3_simulation/rng.py
Layer: Layer 3 (Simulation)
Purpose: Deterministic per-chunk random streams
Depends on: numpy
Used by: kljn_sim, thermod_sim

Chunk i of a run seeded with s draws from SeedSequence(s, spawn_key=(i,)),
the same stream SeedSequence(s).spawn(...)[i] would hand out. Streams depend
only on (seed, chunk index), never on which worker computes the chunk.
"""

import numpy as np


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator for chunk `index` of a run seeded with `seed`."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def chunk_lengths(max_bits: int, chunk_size: int) -> list[int]:
    """Bit counts of the chunks covering max_bits; only the last may be short."""
    full, rest = divmod(max_bits, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])
