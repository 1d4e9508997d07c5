"""
Shared fixtures for unit and integration tests.
"""

import math

import pytest
from scipy.special import erfc

from src.layer1_kljn.models import CurrentThresholds, KljnConfig, VoltageThresholds
from src.layer2_thermod.models import ThermodConfig
from src.layer3_simulation.models import StopRule

TEST_SEED = 1234


def q_oracle(x: float) -> float:
    """Independent Gaussian tail used as the reference in numerical tests."""
    return 0.5 * erfc(x / math.sqrt(2.0))


@pytest.fixture
def kljn_cfg() -> KljnConfig:
    return KljnConfig(alpha=10.0, n_samples=100)


@pytest.fixture
def thermod_cfg() -> ThermodConfig:
    return ThermodConfig(alpha=10.0, delta=0.1, n_samples=100)


@pytest.fixture
def seed_vth() -> VoltageThresholds:
    return VoltageThresholds(beta=4.0 / 3.0, kappa=5.0)


@pytest.fixture
def ndi_thresholds() -> tuple[VoltageThresholds, CurrentThresholds]:
    return VoltageThresholds(beta=1.3150, kappa=3.1532), CurrentThresholds(eta=0.1300, xi=0.3168)


@pytest.fixture
def fixed_bits() -> StopRule:
    """Run exactly max_bits; no early stop."""
    return StopRule(max_bits=200_000, min_errors=0)


@pytest.fixture
def write_config(tmp_path):
    """Write a flat key = value experiment file and return its path."""

    def _write(text: str, name: str = "run.conf"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
