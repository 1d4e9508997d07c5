"""
📁 File: src/layer2_thermod/models.py
Layer: Layer 2 (TherMod scheme)
Purpose: Wireless thermal noise modulation configuration and threshold types
Depends on: pydantic
Used by: theory, Layer 3 (simulation), Layer 4 (sweeps), CLI

Everything is normalized to the receiver noise variance sigma_w^2:
- delta = sigma_0^2 / sigma_w^2 plays the role of an SNR
- bit 0 total variance 1 + delta, bit 1 total variance 1 + alpha * delta
"""

from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.shared.errors import DomainError, ThresholdError


class ThermodConfig(BaseModel):
    """TherMod link parameters."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., description="Resistance ratio of the two transmit resistors (> 1)")
    delta: float = Field(..., description="Useful-to-receiver noise variance ratio (> 0)")
    n_samples: int = Field(..., description="Complex baseband samples per bit N (>= 2)")

    @model_validator(mode="after")
    def check_invariants(self) -> Self:
        for name, value, ok in (
            ("alpha", self.alpha, self.alpha > 1.0),
            ("delta", self.delta, self.delta > 0.0),
            ("n_samples", self.n_samples, self.n_samples >= 2),
        ):
            if not ok:
                raise DomainError(
                    f"Invalid TherMod parameter '{name}'={value!r}",
                    details={"parameter": name, "value": value},
                )
        return self

    def with_samples(self, n_samples: int) -> "ThermodConfig":
        return self.model_copy(update={"n_samples": n_samples})


class ThermodVariances(BaseModel):
    """Total received variance per bit, normalized to sigma_w^2."""

    model_config = ConfigDict(frozen=True)

    tilde0: float = Field(..., description="Bit 0 variance, 1 + delta")
    tilde1: float = Field(..., description="Bit 1 variance, 1 + alpha * delta")

    def for_bit(self, bit: int) -> float:
        return self.tilde1 if bit else self.tilde0


class ThermodThreshold(BaseModel):
    """Decision threshold chi = gamma / sigma_w^2; feasible inside (1 + delta, 1 + alpha * delta)."""

    model_config = ConfigDict(frozen=True)

    chi: float = Field(..., description="Normalized variance threshold")

    def check(self, cfg: ThermodConfig) -> "ThermodThreshold":
        """Validate against a link configuration; returns self for chaining."""
        lower = 1.0 + cfg.delta
        upper = 1.0 + cfg.alpha * cfg.delta
        if not (lower < self.chi < upper):
            raise ThresholdError("chi", self.chi, lower, upper)
        return self
