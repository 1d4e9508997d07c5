"""KLJN models, decision rules and closed-form bit error probabilities."""

import math

import numpy as np
import pytest

from src.layer1_kljn.detectors import decide_current, decide_voltage, eve_classify
from src.layer1_kljn.models import (
    BitPair,
    CurrentThresholds,
    DetectorKind,
    EveVerdict,
    KljnConfig,
    VoltageThresholds,
)
from src.layer1_kljn.theory import (
    bep_current,
    bep_current_approx,
    bep_for_detector,
    bep_ndi,
    bep_ndii,
    bep_voltage,
    bep_voltage_approx,
    max_samples_per_bit,
    ndii_error_events,
    ndii_terms,
    prob_correct_ndi,
    seed_current_thresholds,
    seed_voltage_thresholds,
)
from src.shared.errors import DomainError, ThresholdError
from tests.conftest import q_oracle

pytestmark = pytest.mark.unit

N_VALUES = [50, 75, 100, 150, 200, 300, 400]


class TestModels:
    def test_config_rejects_alpha_one(self):
        with pytest.raises(DomainError):
            KljnConfig(alpha=1.0, n_samples=100)

    def test_config_rejects_single_sample(self):
        with pytest.raises(DomainError):
            KljnConfig(alpha=10.0, n_samples=1)

    def test_small_n_is_allowed(self):
        assert KljnConfig(alpha=10.0, n_samples=10).spread == pytest.approx(math.sqrt(0.2))

    def test_voltage_ordering(self):
        with pytest.raises(ThresholdError) as exc:
            VoltageThresholds(beta=0.5, kappa=5.0)
        assert exc.value.threshold == "beta"

    def test_voltage_check_against_alpha(self):
        with pytest.raises(ThresholdError) as exc:
            VoltageThresholds(beta=1.9, kappa=5.0).check(10.0)
        assert exc.value.details["threshold"] == "beta"

    def test_current_check_against_alpha(self):
        with pytest.raises(ThresholdError):
            CurrentThresholds(eta=0.05, xi=0.5).check(10.0)

    def test_bit_pair(self):
        assert BitPair(alice_bit=0, bob_bit=1).is_secure
        assert BitPair(alice_bit=1, bob_bit=1).high_count == 2


class TestDecisions:
    def test_voltage(self):
        th = VoltageThresholds(beta=4.0 / 3.0, kappa=5.0)
        assert decide_voltage(1.0, 0, th) == 0
        assert decide_voltage(1.5, 0, th) == 1
        assert decide_voltage(4.0, 1, th) == 0
        assert decide_voltage(6.0, 1, th) == 1

    def test_current(self):
        th = CurrentThresholds(eta=0.13, xi=0.3168)
        assert decide_current(0.9, 0, th) == 0
        assert decide_current(0.05, 1, th) == 1
        assert decide_current(0.18, 0, th) == 1

    def test_vectorized(self):
        th = VoltageThresholds(beta=4.0 / 3.0, kappa=5.0)
        out = decide_voltage(np.array([1.0, 1.5, 4.0]), np.array([0, 0, 1]), th)
        np.testing.assert_array_equal(out, [0, 1, 0])

    def test_eve(self):
        th = VoltageThresholds(beta=4.0 / 3.0, kappa=5.0)
        assert eve_classify(1.0, th) == EveVerdict.CASE_00
        assert eve_classify(1.8, th) == EveVerdict.SECURE
        assert eve_classify(10.0, th) == EveVerdict.CASE_11


def _voltage_oracle(alpha, n, beta, kappa):
    s = math.sqrt(2.0 / n)
    v01 = 2 * alpha / (1 + alpha)
    return 0.25 * (
        q_oracle((beta - 1) / s)
        + q_oracle((alpha - kappa) / (alpha * s))
        + q_oracle((v01 - beta) / (v01 * s))
        + q_oracle((kappa - v01) / (v01 * s))
    )


class TestVoltageBep:
    def test_matches_oracle(self, kljn_cfg, seed_vth):
        expected = _voltage_oracle(10.0, 100, 4.0 / 3.0, 5.0)
        assert bep_voltage(kljn_cfg, seed_vth) == pytest.approx(expected, rel=1e-12)

    def test_tuned_thresholds_improve_on_seed(self, kljn_cfg, seed_vth):
        tuned = VoltageThresholds(beta=1.3160, kappa=3.1512)
        assert bep_voltage(kljn_cfg, tuned) <= bep_voltage(kljn_cfg, seed_vth)

    def test_decreasing_in_n(self, seed_vth):
        values = [bep_voltage(KljnConfig(alpha=10.0, n_samples=n), seed_vth) for n in N_VALUES]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_infeasible_threshold(self, kljn_cfg):
        with pytest.raises(ThresholdError):
            bep_voltage(kljn_cfg, VoltageThresholds(beta=1.2, kappa=12.0))

    def test_approx_close_to_exact(self, kljn_cfg, seed_vth):
        approx = bep_voltage_approx(kljn_cfg, 4.0 / 3.0)
        assert approx == pytest.approx(bep_voltage(kljn_cfg, seed_vth), rel=0.05)

    def test_uniform_threshold_value(self, kljn_cfg):
        value = bep_voltage_approx(kljn_cfg, 4.0 / 3.0, large_alpha=True)
        assert value == pytest.approx(0.5 * q_oracle(1.0 / (3.0 * kljn_cfg.spread)), rel=1e-12)
        assert value == pytest.approx(4.61e-3, abs=2e-5)

    def test_approx_rejects_bad_beta(self, kljn_cfg):
        with pytest.raises(ThresholdError):
            bep_voltage_approx(kljn_cfg, 1.9)


class TestCurrentBep:
    @pytest.mark.parametrize("n", N_VALUES)
    def test_current_equals_voltage_at_uniform_thresholds(self, n):
        cfg = KljnConfig(alpha=10.0, n_samples=n)
        current = bep_current_approx(cfg, 4.0 / 30.0, large_alpha=True)
        voltage = bep_voltage_approx(cfg, 4.0 / 3.0, large_alpha=True)
        assert current == pytest.approx(voltage, rel=1e-12)

    def test_decreasing_in_n(self):
        th = CurrentThresholds(eta=0.13, xi=0.3168)
        values = [bep_current(KljnConfig(alpha=10.0, n_samples=n), th) for n in N_VALUES]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestNewDetectors:
    def test_ndi_matches_oracle(self, kljn_cfg, ndi_thresholds):
        vth, cth = ndi_thresholds
        s = kljn_cfg.spread
        v01, c01, c11, a = 20 / 11, 2 / 11, 0.1, 10.0
        b, k, e, x = vth.beta, vth.kappa, cth.eta, cth.xi
        expected = 0.25 * (
            q_oracle((1 - b) / s) * q_oracle((x - 1) / s)
            + q_oracle((k - a) / (a * s)) * q_oracle((c11 - e) / (c11 * s))
            + q_oracle((b - v01) / (v01 * s)) * q_oracle((c01 - x) / (c01 * s))
            + q_oracle((v01 - k) / (v01 * s)) * q_oracle((e - c01) / (c01 * s))
        )
        assert prob_correct_ndi(kljn_cfg, vth, cth) == pytest.approx(expected, rel=1e-12)
        assert bep_ndi(kljn_cfg, vth, cth) == pytest.approx(0.5 * (1 - expected), rel=1e-12)

    def test_ndi_correct_tends_to_one(self, ndi_thresholds):
        vth, cth = ndi_thresholds
        assert prob_correct_ndi(KljnConfig(alpha=10.0, n_samples=100_000), vth, cth) == pytest.approx(1.0)

    def test_ndii_matches_oracle(self, kljn_cfg):
        s = kljn_cfg.spread
        v01, c01, a = 20 / 11, 2 / 11, 10.0
        kappa, xi = 3.1512, 0.3148
        expected = 0.25 * (
            q_oracle((1 - xi) / s)
            + q_oracle((a - kappa) / (a * s))
            + q_oracle((xi - c01) / (c01 * s))
            + q_oracle((kappa - v01) / (v01 * s))
        )
        assert bep_ndii(kljn_cfg, kappa, xi) == pytest.approx(expected, rel=1e-12)

    def test_ndii_reduced_symmetry(self):
        kappa = 3.1512
        t = ndii_terms(10.0, 100, kappa, kappa / 10.0)
        assert float(t[0]) == pytest.approx(float(t[1]), rel=1e-12)
        assert float(t[2]) == pytest.approx(float(t[3]), rel=1e-12)

    def test_ndii_bit_errors_balance_when_reduced(self, kljn_cfg):
        events = ndii_error_events(kljn_cfg, 3.1512, 0.31512)
        assert events.bit0_error == pytest.approx(events.bit1_error, rel=1e-12)

    def test_ndii_tends_to_zero(self):
        assert bep_ndii(KljnConfig(alpha=10.0, n_samples=100_000), 3.1512, 0.3148) < 1e-12

    def test_ndii_infeasible_xi(self, kljn_cfg):
        with pytest.raises(ThresholdError):
            bep_ndii(kljn_cfg, 3.1512, 0.1)


class TestDispatch:
    def test_every_detector(self, kljn_cfg, ndi_thresholds):
        vth, cth = ndi_thresholds
        assert bep_for_detector(kljn_cfg, DetectorKind.CLASSICAL_VOLTAGE, vth, None) == bep_voltage(kljn_cfg, vth)
        assert bep_for_detector(kljn_cfg, DetectorKind.CLASSICAL_CURRENT, None, cth) == bep_current(kljn_cfg, cth)
        assert bep_for_detector(kljn_cfg, DetectorKind.NEW_DETECTOR_I, vth, cth) == bep_ndi(kljn_cfg, vth, cth)
        assert bep_for_detector(kljn_cfg, DetectorKind.NEW_DETECTOR_II, vth, cth) == bep_ndii(
            kljn_cfg, vth.kappa, cth.xi
        )

    def test_missing_thresholds(self, kljn_cfg, seed_vth):
        with pytest.raises(DomainError):
            bep_for_detector(kljn_cfg, DetectorKind.NEW_DETECTOR_I, seed_vth, None)


class TestHelpers:
    def test_max_samples(self):
        assert max_samples_per_bit(1e-3, 50e3) == 100
        assert max_samples_per_bit(1.0, 0.5) == 1
        assert max_samples_per_bit(0.5e-3, 50e3) == 50

    def test_max_samples_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            max_samples_per_bit(0.0, 50e3)

    def test_seeds_are_feasible(self):
        for alpha in (1.5, 3.0, 10.0, 40.0):
            seed_voltage_thresholds(alpha).check(alpha)
            seed_current_thresholds(alpha).check(alpha)

    def test_seed_values_alpha_ten(self):
        vth = seed_voltage_thresholds(10.0)
        assert vth.beta == pytest.approx(4.0 / 3.0)
        assert seed_current_thresholds(10.0).eta == pytest.approx(4.0 / 30.0)
