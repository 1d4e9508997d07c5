"""
📁 File: src/layer3_simulation/models.py
Layer: Layer 3 (Simulation)
Purpose: Monte Carlo configuration, sample blocks, tallies and outcomes
Depends on: pydantic, numpy
Used by: estimators, engine, kljn_sim, thermod_sim, CLI

Defines:
- Sample-variance realization modes and ND-I conflict policies
- Stop rule (bit cap, early stop after enough errors)
- Raw sample blocks for both schemes
- Mergeable per-chunk tallies and the final SimOutcome
"""

from enum import Enum
from typing import Optional, Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.shared.config import get_settings
from src.shared.errors import DomainError, SimulationError

settings = get_settings()


class SampleMode(str, Enum):
    """How the sample variance of one bit interval is realized."""

    GAUSSIAN_FIT = "gaussian-fit"  # one draw from the CLT normal approximation
    RAW_SAMPLES = "raw-samples"  # N raw Gaussian samples, then the estimator


class NdiPolicy(str, Enum):
    """What ND-I does with a bit whose voltage and current readings disagree."""

    DISCARD = "discard"  # drop it from the kept-BER numerator and denominator
    FLAG_AS_ERROR = "flag_as_error"  # count it as an error
    RANDOM_GUESS = "random_guess"  # resolve with a fair coin


class StopRule(BaseModel):
    """Run until max_bits or until min_errors errors were seen (0 disables the early stop)."""

    model_config = ConfigDict(frozen=True)

    max_bits: int = Field(default_factory=lambda: settings.DEFAULT_MAX_BITS)
    min_errors: int = Field(default_factory=lambda: settings.DEFAULT_MIN_ERRORS)

    @model_validator(mode="after")
    def check_counts(self) -> Self:
        if self.max_bits < 1 or self.min_errors < 0:
            raise DomainError(
                "Stop rule needs max_bits >= 1 and min_errors >= 0",
                details={"max_bits": self.max_bits, "min_errors": self.min_errors},
            )
        return self

    def reached(self, bits: int, errors: int) -> bool:
        if bits >= self.max_bits:
            return True
        return self.min_errors > 0 and errors >= self.min_errors


class KljnSampleBlock(BaseModel):
    """Raw line samples of one KLJN bit interval."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    voltage_samples: np.ndarray
    current_samples: Optional[np.ndarray] = None

    @model_validator(mode="after")
    def check_lengths(self) -> Self:
        if self.current_samples is not None and len(self.current_samples) != len(self.voltage_samples):
            raise DomainError(
                "Voltage and current blocks must have equal length",
                details={
                    "voltage": len(self.voltage_samples),
                    "current": len(self.current_samples),
                },
            )
        return self


class ThermodSampleBlock(BaseModel):
    """Complex baseband samples of one TherMod bit, stored as (N, 2) in-phase/quadrature pairs."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    complex_samples: np.ndarray

    @model_validator(mode="after")
    def check_shape(self) -> Self:
        arr = self.complex_samples
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise DomainError(
                "Complex samples must have shape (N, 2)",
                details={"shape": list(arr.shape)},
            )
        return self


class SimTally(BaseModel):
    """Counts of one chunk (or of merged chunks); merging is plain addition."""

    bits: int = 0
    errors_alice: int = 0
    errors_bob: int = 0
    discarded: int = 0
    discarded_bob: int = 0
    eve_secure: int = 0
    eve_secure_hits: int = 0
    clamp_events: int = 0
    chunks: int = 0

    def merge(self, other: "SimTally") -> "SimTally":
        return SimTally(
            **{name: getattr(self, name) + getattr(other, name) for name in SimTally.model_fields}
        )

    @property
    def stop_errors(self) -> int:
        return max(self.errors_alice, self.errors_bob)


def _ratio(num: int, den: int) -> float:
    return num / den if den > 0 else 0.0


class SimOutcome(BaseModel):
    """
    Result of a Monte Carlo run.

    With the ND-I discard policy ber_alice/ber_bob are kept-BERs: each party's
    discarded bits leave both numerator and denominator. For TherMod, Bob is the
    receiver and Alice's counts stay zero.
    """

    scheme: str
    detector: Optional[str] = None
    mode: SampleMode
    ndi_policy: Optional[NdiPolicy] = None
    bits_simulated: int
    errors_alice: int
    errors_bob: int
    discarded: int = 0
    discarded_bob: int = 0
    ber_alice: float
    ber_bob: float
    ber_ci_halfwidth: float
    eve_secure_fraction: float = 0.0
    eve_accuracy_on_secure: float = 0.0
    clamp_events: int = 0
    seed: int
    chunk_size: int
    chunks: int

    @model_validator(mode="after")
    def check_counts(self) -> Self:
        counts = {
            "bits_simulated": self.bits_simulated,
            "errors_alice": self.errors_alice,
            "errors_bob": self.errors_bob,
            "discarded": self.discarded,
            "discarded_bob": self.discarded_bob,
            "clamp_events": self.clamp_events,
        }
        negative = [name for name, value in counts.items() if value < 0]
        if negative:
            raise SimulationError("Simulation counts must be nonnegative", details={"fields": negative})

        bits = self.bits_simulated
        discarding = self.ndi_policy == NdiPolicy.DISCARD
        for party, errors, discarded in (
            ("alice", self.errors_alice, self.discarded),
            ("bob", self.errors_bob, self.discarded_bob),
        ):
            kept = bits - discarded if discarding else bits
            if discarded > bits or errors > kept:
                raise SimulationError(
                    f"Inconsistent tally for {party}: errors <= kept <= bits violated",
                    details={"party": party, "errors": errors, "discarded": discarded, "bits": bits},
                )

        fractions = {
            "ber_alice": self.ber_alice,
            "ber_bob": self.ber_bob,
            "eve_secure_fraction": self.eve_secure_fraction,
            "eve_accuracy_on_secure": self.eve_accuracy_on_secure,
        }
        outside = [name for name, value in fractions.items() if not 0.0 <= value <= 1.0]
        if outside:
            raise SimulationError(
                "Simulation rates must lie in [0, 1]",
                details={name: fractions[name] for name in outside},
            )
        return self

    @classmethod
    def from_tally(
        cls,
        tally: SimTally,
        *,
        scheme: str,
        mode: SampleMode,
        seed: int,
        chunk_size: int,
        detector: Optional[str] = None,
        ndi_policy: Optional[NdiPolicy] = None,
    ) -> "SimOutcome":
        # deferred import: estimators depends on this module
        from src.layer3_simulation.estimators import binomial_halfwidth

        kept_alice = tally.bits
        kept_bob = tally.bits
        if ndi_policy == NdiPolicy.DISCARD:
            kept_alice -= tally.discarded
            kept_bob -= tally.discarded_bob
        ber_alice = _ratio(tally.errors_alice, kept_alice)
        ber_bob = _ratio(tally.errors_bob, kept_bob)
        primary_ber, primary_n = (ber_bob, kept_bob) if scheme == "thermod" else (ber_alice, kept_alice)
        return cls(
            scheme=scheme,
            detector=detector,
            mode=mode,
            ndi_policy=ndi_policy,
            bits_simulated=tally.bits,
            errors_alice=tally.errors_alice,
            errors_bob=tally.errors_bob,
            discarded=tally.discarded,
            discarded_bob=tally.discarded_bob,
            ber_alice=ber_alice,
            ber_bob=ber_bob,
            ber_ci_halfwidth=binomial_halfwidth(primary_ber, primary_n),
            eve_secure_fraction=_ratio(tally.eve_secure, tally.bits),
            eve_accuracy_on_secure=_ratio(tally.eve_secure_hits, tally.eve_secure),
            clamp_events=tally.clamp_events,
            seed=seed,
            chunk_size=chunk_size,
            chunks=tally.chunks,
        )

    @property
    def ber(self) -> float:
        """Primary-party BER: Alice for KLJN, the receiver for TherMod."""
        return self.ber_bob if self.scheme == "thermod" else self.ber_alice

    @property
    def discard_fraction(self) -> float:
        return _ratio(self.discarded, self.bits_simulated)
