"""
📁 File: src/layer0_physics/johnson.py
Layer: Layer 0 (Physics)
Purpose: Johnson-Nyquist noise formulas and normalized KLJN variance ratios
Depends on: src/layer0_physics/models
Used by: Layer 1 (KLJN), Layer 3 (simulation), link_budget

Physical-unit formulas exist for link budgeting and reporting. All KLJN theory
downstream works on the normalized set, since the bit error probability depends
only on the resistance ratio and not on the individual noise levels.
"""

from src.layer0_physics.models import BOLTZMANN_K, NoiseVarianceSet, PhysicalParams, require_positive
from src.shared.errors import DomainError


def johnson_voltage_variance(p: PhysicalParams) -> float:
    """
    Mean-square thermal noise voltage of a resistor, 4kTR*df.

    Args:
        p: Temperature, resistance and bandwidth

    Returns:
        Variance in volts squared
    """
    return 4.0 * p.boltzmann_k * p.temperature_T * p.resistance_R * p.bandwidth_df


def parallel_voltage_psd(T: float, Ra: float, Rb: float) -> float:
    """
    Line voltage noise PSD with both parties' resistors in parallel.

    Args:
        T: Temperature in kelvin
        Ra: Alice's resistance in ohms
        Rb: Bob's resistance in ohms

    Returns:
        4kT * RaRb/(Ra+Rb) in watts per hertz

    Raises:
        DomainError: If any input is nonpositive
    """
    require_positive(T=T, Ra=Ra, Rb=Rb)
    return 4.0 * BOLTZMANN_K * T * (Ra * Rb) / (Ra + Rb)


def loop_current_psd(T: float, Ra: float, Rb: float) -> float:
    """
    Loop current noise PSD, 4kT/(Ra+Rb).

    Raises:
        DomainError: If any input is nonpositive
    """
    require_positive(T=T, Ra=Ra, Rb=Rb)
    return 4.0 * BOLTZMANN_K * T / (Ra + Rb)


def normalized_variances(alpha: float) -> NoiseVarianceSet:
    """
    Normalized voltage and current variances of the three KLJN bit cases.

    Voltage ratios are 1 : 2a/(1+a) : a (largest fluctuations for 11),
    current ratios 1 : 2/(1+a) : 1/a (largest fluctuations for 00).

    Args:
        alpha: Resistance ratio R_H/R_L, must exceed 1

    Returns:
        NoiseVarianceSet with v00 = c00 = 1

    Raises:
        DomainError: If alpha <= 1
    """
    if not alpha > 1.0:
        raise DomainError(
            f"Resistance ratio alpha must exceed 1, got {alpha!r}",
            details={"parameter": "alpha", "value": alpha},
        )
    return NoiseVarianceSet(
        v01=2.0 * alpha / (1.0 + alpha),
        v11=alpha,
        c01=2.0 / (1.0 + alpha),
        c11=1.0 / alpha,
    )
