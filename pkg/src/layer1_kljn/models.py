"""
📁 File: src/layer1_kljn/models.py
Layer: Layer 1 (KLJN scheme)
Purpose: KLJN configuration, threshold and detector definitions
Depends on: pydantic, src/layer0_physics
Used by: detectors, theory, Layer 3 (simulation), Layer 4 (optimization)

Defines:
- Scheme configuration (resistance ratio, samples per bit)
- Normalized voltage and current decision thresholds with feasibility checks
- Bit pairs, detector kinds and eavesdropper verdicts
- Per-event error probabilities
"""

import math
from enum import Enum, IntEnum
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.layer0_physics.johnson import normalized_variances
from src.layer0_physics.models import NoiseVarianceSet
from src.shared.config import get_settings
from src.shared.errors import DomainError, ThresholdError
from src.shared.logger import get_logger

logger = get_logger(__name__)
settings = get_settings()


class DetectorKind(str, Enum):
    """Detectors available to Alice and Bob."""

    CLASSICAL_VOLTAGE = "classical-voltage"
    CLASSICAL_CURRENT = "classical-current"
    NEW_DETECTOR_I = "nd-i"  # joint voltage/current, flags conflicts
    NEW_DETECTOR_II = "nd-ii"  # measurement type chosen by own bit


class EveVerdict(IntEnum):
    """
    Eavesdropper's reading of the line voltage variance.

    The integer value is Eve's estimate of how many parties chose the high resistor.
    """

    CASE_00 = 0
    SECURE = 1
    CASE_11 = 2


class KljnConfig(BaseModel):
    """KLJN scheme parameters."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., description="Resistance ratio R_H/R_L (> 1)")
    n_samples: int = Field(..., description="Independent noise samples per bit N (>= 2)")

    @model_validator(mode="after")
    def check_invariants(self) -> Self:
        if not self.alpha > 1.0:
            raise DomainError(
                f"alpha must exceed 1, got {self.alpha!r}",
                details={"parameter": "alpha", "value": self.alpha},
            )
        if self.n_samples < 2:
            raise DomainError(
                f"n_samples must be at least 2, got {self.n_samples}",
                details={"parameter": "n_samples", "value": self.n_samples},
            )
        if self.n_samples < settings.SMALL_N_WARNING:
            logger.warning(
                "gaussian_fit_poor_for_small_n",
                n_samples=self.n_samples,
                recommended_min=settings.SMALL_N_WARNING,
            )
        return self

    @property
    def variances(self) -> NoiseVarianceSet:
        return normalized_variances(self.alpha)

    @property
    def spread(self) -> float:
        """Relative standard deviation sqrt(2/N) of the real sample variance."""
        return math.sqrt(2.0 / self.n_samples)

    def with_samples(self, n_samples: int) -> "KljnConfig":
        return KljnConfig(alpha=self.alpha, n_samples=n_samples)


def _check_open(name: str, value: float, lower: float, upper: float) -> None:
    if not (lower < value < upper):
        raise ThresholdError(name, value, lower, upper)


class VoltageThresholds(BaseModel):
    """
    Voltage thresholds normalized to the 00-case variance.

    Feasible when 1 < beta < 2a/(1+a) < kappa < a.
    """

    model_config = ConfigDict(frozen=True)

    beta: float = Field(..., description="Lower threshold gamma_1 / sigma^2")
    kappa: float = Field(..., description="Upper threshold gamma_2 / sigma^2")

    @model_validator(mode="after")
    def check_ordering(self) -> Self:
        _check_open("kappa", self.kappa, 1.0, math.inf)
        _check_open("beta", self.beta, 1.0, self.kappa)
        return self

    def check(self, alpha: float) -> "VoltageThresholds":
        """Validate against a resistance ratio; returns self for chaining."""
        v01 = 2.0 * alpha / (1.0 + alpha)
        _check_open("beta", self.beta, 1.0, v01)
        _check_open("kappa", self.kappa, v01, alpha)
        return self


class CurrentThresholds(BaseModel):
    """
    Current thresholds normalized to the 00-case current variance.

    Feasible when 1/a < eta < 2/(1+a) < xi < 1.
    """

    model_config = ConfigDict(frozen=True)

    eta: float = Field(..., description="Lower threshold gamma_3 / s^2")
    xi: float = Field(..., description="Upper threshold gamma_4 / s^2")

    @model_validator(mode="after")
    def check_ordering(self) -> Self:
        _check_open("xi", self.xi, 0.0, 1.0)
        _check_open("eta", self.eta, 0.0, self.xi)
        return self

    def check(self, alpha: float) -> "CurrentThresholds":
        """Validate against a resistance ratio; returns self for chaining."""
        c01 = 2.0 / (1.0 + alpha)
        _check_open("eta", self.eta, 1.0 / alpha, c01)
        _check_open("xi", self.xi, c01, 1.0)
        return self


class BitPair(BaseModel):
    """Bits selected by Alice and Bob for one exchange."""

    model_config = ConfigDict(frozen=True)

    alice_bit: int = Field(..., ge=0, le=1)
    bob_bit: int = Field(..., ge=0, le=1)

    @property
    def high_count(self) -> int:
        """Number of parties on the high resistor: 0 (00), 1 (01/10) or 2 (11)."""
        return self.alice_bit + self.bob_bit

    @property
    def is_secure(self) -> bool:
        return self.alice_bit != self.bob_bit


class ErrorEvents(BaseModel):
    """
    Probabilities of Alice's four error events (Bob's mirror them).

    Naming follows "true case -> decided case" from a party holding the first bit:
    p00_01 is deciding 01 when the line is 00.
    """

    p00_01: float
    p11_10: float
    p01_00: float
    p10_11: float

    @property
    def bep(self) -> float:
        """Average over the four equiprobable bit pairs."""
        return 0.25 * (self.p00_01 + self.p11_10 + self.p01_00 + self.p10_11)

    @property
    def bit0_error(self) -> float:
        """Error probability of a party whose own bit is 0."""
        return 0.5 * (self.p00_01 + self.p01_00)

    @property
    def bit1_error(self) -> float:
        """Error probability of a party whose own bit is 1."""
        return 0.5 * (self.p11_10 + self.p10_11)
