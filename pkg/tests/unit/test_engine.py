"""Chunked runner: stream layout, stop rule and determinism."""

import numpy as np
import pytest

from src.layer1_kljn.models import DetectorKind, KljnConfig, VoltageThresholds
from src.layer3_simulation.engine import ChunkedRunner
from src.layer3_simulation.kljn_sim import simulate_kljn
from src.layer3_simulation.models import NdiPolicy, SampleMode, SimOutcome, SimTally, StopRule
from src.layer3_simulation.rng import chunk_lengths, chunk_rng
from src.shared.errors import DomainError, SimulationError

pytestmark = pytest.mark.unit


def counting_chunk(job: int, index: int, m: int) -> SimTally:
    """Module-level so it can be shipped to worker processes."""
    rng = chunk_rng(job, index)
    errors = int(np.count_nonzero(rng.random(m) < 0.01))
    return SimTally(bits=m, errors_alice=errors, errors_bob=errors, chunks=1)


def failing_chunk(job: int, index: int, m: int) -> SimTally:
    raise RuntimeError("boom")


def test_chunk_lengths():
    assert chunk_lengths(10, 4) == [4, 4, 2]
    assert chunk_lengths(8, 4) == [4, 4]


def test_chunk_streams_are_distinct_and_repeatable():
    a = chunk_rng(5, 0).random(4)
    np.testing.assert_array_equal(a, chunk_rng(5, 0).random(4))
    assert not np.array_equal(a, chunk_rng(5, 1).random(4))


def test_stop_rule_validation():
    with pytest.raises(DomainError):
        StopRule(max_bits=0, min_errors=0)
    assert not StopRule(max_bits=100, min_errors=0).reached(50, 10_000)
    assert StopRule(max_bits=100, min_errors=5).reached(50, 5)


def test_stops_on_error_count():
    tally = ChunkedRunner(chunk_size=1000, workers=1).run(counting_chunk, 3, StopRule(max_bits=10**6, min_errors=30))
    assert tally.errors_alice >= 30
    assert tally.bits < 10**6
    assert tally.bits % 1000 == 0


def test_runs_to_max_bits():
    tally = ChunkedRunner(chunk_size=1000, workers=1).run(counting_chunk, 3, StopRule(max_bits=2500, min_errors=0))
    assert tally.bits == 2500
    assert tally.chunks == 3


def test_chunk_failure_is_wrapped():
    with pytest.raises(SimulationError):
        ChunkedRunner(chunk_size=10, workers=1).run(failing_chunk, 0, StopRule(max_bits=20, min_errors=0))


def test_invalid_runner():
    with pytest.raises(SimulationError):
        ChunkedRunner(chunk_size=0, workers=1)


@pytest.mark.slow
@pytest.mark.parametrize("min_errors", [0, 50])
def test_worker_count_does_not_change_result(min_errors):
    stop = StopRule(max_bits=20_000, min_errors=min_errors)
    serial = ChunkedRunner(chunk_size=1000, workers=1).run(counting_chunk, 9, stop)
    parallel = ChunkedRunner(chunk_size=1000, workers=3).run(counting_chunk, 9, stop)
    assert serial == parallel


@pytest.mark.slow
def test_simulation_identical_across_workers():
    cfg = KljnConfig(alpha=10.0, n_samples=50)
    vth = VoltageThresholds(beta=4.0 / 3.0, kappa=5.0)
    stop = StopRule(max_bits=30_000, min_errors=0)
    runs: list[SimOutcome] = [
        simulate_kljn(cfg, DetectorKind.CLASSICAL_VOLTAGE, vth, None, SampleMode.RAW_SAMPLES, stop, 42,
                      chunk_size=4096, workers=w)
        for w in (1, 2)
    ]
    assert runs[0] == runs[1]


def test_same_seed_same_outcome():
    cfg = KljnConfig(alpha=10.0, n_samples=100)
    vth = VoltageThresholds(beta=4.0 / 3.0, kappa=5.0)
    stop = StopRule(max_bits=20_000, min_errors=0)
    first = simulate_kljn(cfg, DetectorKind.CLASSICAL_VOLTAGE, vth, None, SampleMode.GAUSSIAN_FIT, stop, 7)
    second = simulate_kljn(cfg, DetectorKind.CLASSICAL_VOLTAGE, vth, None, SampleMode.GAUSSIAN_FIT, stop, 7)
    other = simulate_kljn(cfg, DetectorKind.CLASSICAL_VOLTAGE, vth, None, SampleMode.GAUSSIAN_FIT, stop, 8)
    assert first == second
    assert first.errors_alice != other.errors_alice or first.eve_secure_fraction != other.eve_secure_fraction


class TestOutcomeCounts:
    def outcome(self, tally: SimTally, policy: NdiPolicy | None = None) -> SimOutcome:
        return SimOutcome.from_tally(
            tally, scheme="kljn", mode=SampleMode.GAUSSIAN_FIT, seed=1, chunk_size=100, ndi_policy=policy
        )

    def test_consistent_tally(self):
        out = self.outcome(SimTally(bits=100, errors_alice=5, errors_bob=4, discarded=10, chunks=1), NdiPolicy.DISCARD)
        assert out.ber_alice == pytest.approx(5 / 90)
        assert out.discard_fraction == pytest.approx(0.1)

    def test_errors_beyond_kept_bits(self):
        with pytest.raises(SimulationError):
            self.outcome(SimTally(bits=100, errors_alice=95, discarded=10, chunks=1), NdiPolicy.DISCARD)

    def test_flagged_conflicts_may_count_as_errors(self):
        out = self.outcome(SimTally(bits=100, errors_alice=95, discarded=10, chunks=1), NdiPolicy.FLAG_AS_ERROR)
        assert out.ber_alice == pytest.approx(0.95)

    def test_more_discards_than_bits(self):
        with pytest.raises(SimulationError):
            self.outcome(SimTally(bits=10, discarded_bob=11, chunks=1), NdiPolicy.RANDOM_GUESS)

    def test_negative_count(self):
        with pytest.raises(SimulationError):
            self.outcome(SimTally(bits=10, clamp_events=-1, chunks=1))

    def test_secure_hits_beyond_secure_bits(self):
        with pytest.raises(SimulationError):
            self.outcome(SimTally(bits=10, eve_secure=2, eve_secure_hits=3, chunks=1))
