"""TherMod decision rule, uniform threshold and closed forms."""

import math

import numpy as np
import pytest

from src.layer2_thermod.models import ThermodConfig, ThermodThreshold
from src.layer2_thermod.theory import (
    chi_terms,
    decide_thermod,
    thermod_bep,
    thermod_bep_largealpha,
    thermod_bep_uniform,
    thermod_error_events,
    thermod_variances,
    uniform_argument,
    uniform_chi,
)
from src.shared.errors import DomainError, ThresholdError
from tests.conftest import q_oracle

pytestmark = pytest.mark.unit


def test_variances(thermod_cfg):
    v = thermod_variances(thermod_cfg)
    assert (v.tilde0, v.tilde1) == pytest.approx((1.1, 2.0))
    assert v.for_bit(1) == v.tilde1


def test_vanishing_signal():
    v = thermod_variances(ThermodConfig(alpha=10.0, delta=1e-9, n_samples=100))
    assert (v.tilde0, v.tilde1) == pytest.approx((1.0, 1.0), abs=1e-7)


@pytest.mark.parametrize(
    "kwargs", [{"alpha": 1.0, "delta": 0.1}, {"alpha": 10.0, "delta": 0.0}, {"alpha": 10.0, "delta": 0.1, "n_samples": 1}]
)
def test_invalid_config(kwargs):
    with pytest.raises(DomainError):
        ThermodConfig(**{"n_samples": 100, **kwargs})


class TestDecision:
    def test_scalar(self):
        th = ThermodThreshold(chi=1.4194)
        assert decide_thermod(1.05, th) == 0
        assert decide_thermod(1.9, th) == 1
        assert decide_thermod(1.4194, th) == 0

    def test_vectorized(self):
        out = decide_thermod(np.array([1.0, 2.0]), ThermodThreshold(chi=1.5))
        np.testing.assert_array_equal(out, [0, 1])


class TestUniformChi:
    def test_value(self, thermod_cfg):
        assert uniform_chi(thermod_cfg).chi == pytest.approx(1.4194, abs=5e-5)

    def test_collapses_with_delta(self):
        assert uniform_chi(ThermodConfig(alpha=10.0, delta=1e-9, n_samples=100)).chi == pytest.approx(1.0)

    def test_equalizes_error_events(self, thermod_cfg):
        p01, p10 = thermod_error_events(thermod_cfg, uniform_chi(thermod_cfg))
        assert p01 == pytest.approx(p10, rel=1e-12)


class TestBep:
    def test_uniform_value(self, thermod_cfg):
        assert uniform_argument(thermod_cfg) == pytest.approx(2.9032, abs=1e-4)
        assert thermod_bep_uniform(thermod_cfg) == pytest.approx(1.85e-3, abs=2e-5)

    def test_uniform_identity(self, thermod_cfg):
        assert thermod_bep(thermod_cfg, uniform_chi(thermod_cfg)) == pytest.approx(
            thermod_bep_uniform(thermod_cfg), rel=1e-12
        )

    def test_q_six(self):
        cfg = ThermodConfig(alpha=10.0, delta=0.5, n_samples=100)
        assert thermod_bep_uniform(cfg) == pytest.approx(q_oracle(6.0), rel=1e-9)

    def test_alpha_to_one(self):
        cfg = ThermodConfig(alpha=1.0 + 1e-9, delta=0.1, n_samples=100)
        assert thermod_bep_uniform(cfg) == pytest.approx(0.5, abs=1e-6)

    def test_threshold_outside_interval(self, thermod_cfg):
        with pytest.raises(ThresholdError):
            thermod_bep(thermod_cfg, ThermodThreshold(chi=2.5))

    def test_uniform_decreasing_in_each_parameter(self):
        base = {"alpha": 10.0, "delta": 0.1, "n_samples": 100}
        for name, grid in (
            ("n_samples", [10, 25, 50, 100, 200, 400]),
            ("delta", [0.05, 0.1, 0.2, 0.5]),
            ("alpha", [1.5, 2.0, 5.0, 10.0, 40.0]),
        ):
            values = [thermod_bep_uniform(ThermodConfig(**{**base, name: v})) for v in grid]
            assert all(a > b for a, b in zip(values, values[1:])), name

    def test_uniform_near_grid_minimum(self):
        for n in (50, 100, 200, 400):
            cfg = ThermodConfig(alpha=10.0, delta=0.1, n_samples=n)
            chis = np.round(np.arange(1.101, 2.0, 0.001), 12)
            p01, p10 = chi_terms(cfg, chis)
            grid_min = float(np.min(0.5 * (p01 + p10)))
            assert thermod_bep_uniform(cfg) == pytest.approx(grid_min, rel=0.10)


class TestLargeAlpha:
    def test_close_to_exact_on_log_scale(self):
        cfg = ThermodConfig(alpha=40.0, delta=0.2, n_samples=100)
        exact, approx = thermod_bep_uniform(cfg), thermod_bep_largealpha(cfg)
        assert abs(math.log(approx) - math.log(exact)) <= 0.1 * abs(math.log(exact))

    def test_strong_signal_limit(self):
        cfg = ThermodConfig(alpha=1e4, delta=1.0, n_samples=100)
        assert thermod_bep_largealpha(cfg) == pytest.approx(q_oracle(10.0), rel=0.05)

    def test_weak_signal_limit(self):
        cfg = ThermodConfig(alpha=2.0, delta=1e-3, n_samples=100)
        assert thermod_bep_largealpha(cfg) == pytest.approx(q_oracle(10.0 * 2e-3 / 2.0), rel=1e-3)
