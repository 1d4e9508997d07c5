"""
📁 File: src/layer0_physics/link_budget.py
Layer: Layer 0 (Physics)
Purpose: Friis path gain and documentation-grade TherMod link budgeting
Depends on: src/layer0_physics/johnson, src/layer0_physics/models
Used by: Layer 2 (TherMod) helpers, CLI reporting

The receiver noise level carries an unspecified proportionality (noise figure),
so these helpers only produce a delta for documentation. TherMod theory and
simulation take delta directly.
"""

import math

from src.layer0_physics.johnson import johnson_voltage_variance
from src.layer0_physics.models import BOLTZMANN_K, LinkBudget, PhysicalParams, require_positive


def friis_path_gain(lb: LinkBudget) -> float:
    """
    Free-space power gain G_t * G_r * (lambda / (4 pi d))^2.

    Args:
        lb: Link geometry and antenna gains

    Returns:
        Dimensionless path gain
    """
    return lb.gain_tx * lb.gain_rx * (lb.wavelength / (4.0 * math.pi * lb.distance_d)) ** 2


def thermal_noise_power(T: float, bandwidth: float, noise_factor: float = 1.0) -> float:
    """Receiver noise floor k*T*B*F in watts."""
    require_positive(T=T, bandwidth=bandwidth, noise_factor=noise_factor)
    return BOLTZMANN_K * T * bandwidth * noise_factor


def received_noise_variance(p: PhysicalParams, lb: LinkBudget) -> float:
    """Transmitted thermal noise variance scaled by the path gain."""
    return johnson_voltage_variance(p) * friis_path_gain(lb)


def delta_from_link(p_low: PhysicalParams, lb: LinkBudget, receiver_noise: float) -> float:
    """
    TherMod quality metric: useful (bit 0) noise variance over receiver noise variance.

    Args:
        p_low: Thermal noise parameters of the low-valued transmit resistor
        lb: Link geometry
        receiver_noise: Receiver noise variance in the same units

    Returns:
        delta = sigma_0^2 / sigma_w^2
    """
    require_positive(receiver_noise=receiver_noise)
    return received_noise_variance(p_low, lb) / receiver_noise
