"""
📁 File: src/shared/config.py
Layer: Shared (Cross-cutting)
Purpose: Centralized configuration management with validation
Depends on: pydantic-settings, python-dotenv
Used by: All layers

Configuration principles:
- Single source of truth
- Environment-based overrides (THERCOM_ prefix, optional .env)
- Validation at startup
- Type-safe access
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Toolkit settings loaded from environment variables.

    All settings have defaults suitable for desk-scale runs.
    Long reproductions override them via THERCOM_* variables or CLI flags.
    """

    model_config = SettingsConfigDict(
        env_prefix="THERCOM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",  # Ignore extra env vars
    )

    # ==========================================
    # APPLICATION
    # ==========================================
    APP_NAME: str = "thercom-sim"
    APP_VERSION: str = "0.1.0"
    ENVIRONMENT: Literal["development", "ci", "production"] = "development"
    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "INFO"
    LOG_FORMAT: Literal["json", "text"] = "text"

    # ==========================================
    # LAYER 3 - SIMULATION
    # ==========================================
    DEFAULT_SEED: int = Field(default=20220601, ge=0)
    DEFAULT_MAX_BITS: int = Field(default=1_000_000, ge=1)
    DEFAULT_MIN_ERRORS: int = Field(default=100, ge=0)
    CHUNK_SIZE: int = Field(default=16_384, description="Bits per RNG chunk")
    WORKERS: int = Field(default=1, description="Simulation worker processes")
    CONFIDENCE_SIGMAS: float = Field(default=3.0, gt=0.0)

    # Below this many samples per bit the Gaussian fit of the sample variance is poor
    SMALL_N_WARNING: int = 50

    @field_validator("CHUNK_SIZE", "WORKERS")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Chunk size and worker count must be at least one."""
        if v < 1:
            raise ValueError("must be >= 1")
        return v

    # ==========================================
    # FIGURE REPRODUCTION
    # ==========================================
    DESK_MAX_BITS: int = 1_000_000
    FULL_MAX_BITS: int = 100_000_000
    DESK_MIN_BEP: float = Field(
        default=1e-5,
        description="Desk scale skips simulation points whose theory BEP is below this",
    )
    FULL_MIN_BEP: float = 1e-7
    OUTPUT_DIR: str = "results"

    # ==========================================
    # LAYER 4 - OPTIMIZATION
    # ==========================================
    GRID_TWO_PASS_THRESHOLD: int = 100_000_000
    COARSE_STEP: float = 0.05
    FINE_STEP: float = 0.001

    def is_production(self) -> bool:
        """Check if running in production environment."""
        return self.ENVIRONMENT == "production"

    def max_bits_for_scale(self, scale: str) -> int:
        """Simulated-bit cap per figure point for a reproduction scale."""
        return self.FULL_MAX_BITS if scale == "full" else self.DESK_MAX_BITS

    def min_bep_for_scale(self, scale: str) -> float:
        """Smallest theory BEP still worth simulating at a reproduction scale."""
        return self.FULL_MIN_BEP if scale == "full" else self.DESK_MIN_BEP


@lru_cache
def get_settings() -> Settings:
    """
    Get cached settings instance.

    This function is cached to ensure settings are loaded only once.
    Use this function throughout the toolkit.

    Returns:
        Settings instance

    Example:
        >>> from src.shared.config import get_settings
        >>> settings = get_settings()
        >>> print(settings.CHUNK_SIZE)
    """
    return Settings()
