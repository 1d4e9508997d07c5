"""Gaussian tail, Johnson noise and link-budget formulas."""

import math

import numpy as np
import pytest

from src.layer0_physics.gaussian import q_function
from src.layer0_physics.johnson import (
    johnson_voltage_variance,
    loop_current_psd,
    normalized_variances,
    parallel_voltage_psd,
)
from src.layer0_physics.link_budget import (
    delta_from_link,
    friis_path_gain,
    received_noise_variance,
    thermal_noise_power,
)
from src.layer0_physics.models import BOLTZMANN_K, LinkBudget, PhysicalParams
from src.shared.errors import DomainError
from tests.conftest import q_oracle

pytestmark = pytest.mark.unit


class TestQFunction:
    def test_zero_is_half(self):
        assert q_function(0.0) == 0.5

    def test_matches_oracle(self):
        assert q_function(2.3570) == pytest.approx(9.21e-3, abs=1e-5)
        assert q_function(2.3570) == pytest.approx(q_oracle(2.3570), rel=1e-12)

    def test_deep_left_tail(self):
        assert q_function(-30.0) == pytest.approx(1.0, abs=1e-12)

    def test_complement_symmetry(self):
        x = np.linspace(-8.0, 8.0, 161)
        np.testing.assert_allclose(q_function(x) + q_function(-x), 1.0, atol=1e-12)

    def test_array_in_array_out(self):
        out = q_function(np.array([0.0, 1.0]))
        assert isinstance(out, np.ndarray)
        assert out.shape == (2,)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(DomainError):
            q_function(bad)


class TestJohnson:
    def test_voltage_variance(self):
        p = PhysicalParams(temperature_T=300, resistance_R=1000, bandwidth_df=1)
        assert johnson_voltage_variance(p) == pytest.approx(1.656e-17, rel=1e-12)

    def test_linear_in_resistance(self):
        low = PhysicalParams(temperature_T=300, resistance_R=1000, bandwidth_df=1)
        high = PhysicalParams(temperature_T=300, resistance_R=2000, bandwidth_df=1)
        assert johnson_voltage_variance(high) == pytest.approx(2 * johnson_voltage_variance(low))

    def test_zero_temperature_rejected(self):
        with pytest.raises(DomainError):
            PhysicalParams(temperature_T=0, resistance_R=1000, bandwidth_df=1)

    def test_parallel_psd(self):
        assert parallel_voltage_psd(300, 1e3, 1e4) == pytest.approx(1.5054e-17, rel=1e-4)
        assert parallel_voltage_psd(300, 1e3, 1e4) == parallel_voltage_psd(300, 1e4, 1e3)
        assert parallel_voltage_psd(300, 500, 500) == pytest.approx(4 * BOLTZMANN_K * 300 * 250)

    def test_loop_current_psd(self):
        assert loop_current_psd(300, 1e3, 1e4) == pytest.approx(1.5054e-24, rel=1e-4)
        assert loop_current_psd(300, 2e3, 2e4) == pytest.approx(0.5 * loop_current_psd(300, 1e3, 1e4))

    def test_psd_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            loop_current_psd(300, 0.0, 1e3)


class TestNormalizedVariances:
    def test_alpha_ten(self):
        v = normalized_variances(10.0)
        assert v.voltage_table() == pytest.approx((1.0, 1.8182, 10.0), abs=1e-4)
        assert v.current_table() == pytest.approx((1.0, 0.18182, 0.1), abs=1e-5)

    def test_case_lookup(self):
        v = normalized_variances(10.0)
        assert v.voltage(1) == v.v01
        assert v.current(2) == v.c11

    def test_degenerate_limit(self):
        v = normalized_variances(1.0 + 1e-9)
        assert v.voltage_table() == pytest.approx((1.0, 1.0, 1.0), abs=1e-8)

    def test_alpha_one_rejected(self):
        with pytest.raises(DomainError):
            normalized_variances(1.0)


class TestLinkBudget:
    def test_unit_geometry(self):
        lb = LinkBudget(wavelength=1.0, distance_d=1.0 / (4 * math.pi))
        assert friis_path_gain(lb) == pytest.approx(1.0)

    def test_inverse_square(self):
        near = LinkBudget(wavelength=0.125, distance_d=1.0)
        far = LinkBudget(wavelength=0.125, distance_d=2.0)
        assert friis_path_gain(far) == pytest.approx(friis_path_gain(near) / 4)

    def test_gains(self):
        lb = LinkBudget(wavelength=0.125, distance_d=1.0, gain_tx=100, gain_rx=100)
        assert friis_path_gain(lb) == pytest.approx(9.894e-1, rel=1e-3)

    def test_delta_from_link(self):
        p = PhysicalParams(temperature_T=300, resistance_R=50, bandwidth_df=1e6)
        lb = LinkBudget(wavelength=0.125, distance_d=1.0, gain_tx=100, gain_rx=100)
        noise = thermal_noise_power(300, 1e6, noise_factor=2.0)
        assert delta_from_link(p, lb, noise) == pytest.approx(received_noise_variance(p, lb) / noise)

    def test_receiver_noise_must_be_positive(self):
        p = PhysicalParams(temperature_T=300, resistance_R=50, bandwidth_df=1e6)
        with pytest.raises(DomainError):
            delta_from_link(p, LinkBudget(wavelength=1.0, distance_d=1.0), 0.0)
