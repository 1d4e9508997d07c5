"""
📁 File: src/layer0_physics/models.py
Layer: Layer 0 (Physics)
Purpose: Physical parameter and normalized variance definitions
Depends on: pydantic
Used by: johnson, link_budget, Layer 1 (KLJN), Layer 3 (simulation)

Defines:
- Johnson-Nyquist parameters (k, T, R, bandwidth)
- Line-of-sight link budget parameters
- Normalized voltage/current variance set of the KLJN line

Invariant violations raise DomainError straight out of construction.
"""

from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.shared.errors import DomainError

# Rounded value, not the CODATA constant
BOLTZMANN_K = 1.38e-23


def require_positive(**values: float) -> None:
    """Raise DomainError naming the first nonpositive value."""
    for name, value in values.items():
        if not value > 0.0:
            raise DomainError(
                f"'{name}' must be positive, got {value!r}",
                details={"parameter": name, "value": value},
            )


class PhysicalParams(BaseModel):
    """Parameters of a resistor's thermal noise measured over a bandwidth."""

    model_config = ConfigDict(frozen=True)

    temperature_T: float = Field(..., description="Temperature in kelvin")
    resistance_R: float = Field(..., description="Resistance in ohms")
    bandwidth_df: float = Field(..., description="Noise bandwidth in hertz")
    boltzmann_k: float = Field(
        default=BOLTZMANN_K, description="Boltzmann constant in joules per kelvin"
    )

    @model_validator(mode="after")
    def check_positive(self) -> Self:
        require_positive(
            temperature_T=self.temperature_T,
            resistance_R=self.resistance_R,
            bandwidth_df=self.bandwidth_df,
        )
        return self


class LinkBudget(BaseModel):
    """Free-space line-of-sight link geometry and antenna gains."""

    model_config = ConfigDict(frozen=True)

    wavelength: float = Field(..., description="Carrier wavelength in meters")
    distance_d: float = Field(..., description="Terminal separation in meters")
    gain_tx: float = Field(default=1.0, description="Transmit antenna gain (linear)")
    gain_rx: float = Field(default=1.0, description="Receive antenna gain (linear)")

    @model_validator(mode="after")
    def check_positive(self) -> Self:
        require_positive(
            wavelength=self.wavelength,
            distance_d=self.distance_d,
            gain_tx=self.gain_tx,
            gain_rx=self.gain_rx,
        )
        return self


class NoiseVarianceSet(BaseModel):
    """
    Normalized line-noise variances for the three distinguishable bit cases.

    Voltage and current variances are each normalized to their 00 case. The case
    index is the number of parties that selected the high resistor (0 for 00,
    1 for 01/10, 2 for 11). Build it with `normalized_variances(alpha)`.
    """

    model_config = ConfigDict(frozen=True)

    v00: float = Field(default=1.0, description="Voltage variance, case 00")
    v01: float = Field(..., description="Voltage variance, cases 01/10")
    v11: float = Field(..., description="Voltage variance, case 11")
    c00: float = Field(default=1.0, description="Current variance, case 00")
    c01: float = Field(..., description="Current variance, cases 01/10")
    c11: float = Field(..., description="Current variance, case 11")

    def voltage(self, high_count: int) -> float:
        """Voltage variance for 0, 1 or 2 high-resistor selections."""
        return self.voltage_table()[high_count]

    def current(self, high_count: int) -> float:
        """Current variance for 0, 1 or 2 high-resistor selections."""
        return self.current_table()[high_count]

    def voltage_table(self) -> tuple[float, float, float]:
        return (self.v00, self.v01, self.v11)

    def current_table(self) -> tuple[float, float, float]:
        return (self.c00, self.c01, self.c11)
