"""
📁 File: src/shared/errors.py
Layer: Shared (Cross-cutting)
Purpose: Custom exception hierarchy for the entire toolkit
Depends on: None (foundation)
Used by: All layers

Custom exceptions provide:
1. Structured error information
2. Process exit code mapping (CLI)
3. Short diagnostics naming the offending parameter
4. Detailed logging context
"""

from typing import Any, Optional

# Process exit codes used by the CLI
EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIGURATION = 2
EXIT_DOMAIN = 3
EXIT_IO = 4
EXIT_INTERRUPTED = 130


class ThercomError(Exception):
    """
    Base exception for all toolkit errors.

    Attributes:
        message: Human-readable error message
        error_code: Unique error code for tracking
        details: Additional context for logs
        exit_code: Process exit status when raised out of the CLI
    """

    def __init__(
        self,
        message: str,
        error_code: str,
        details: Optional[dict[str, Any]] = None,
        exit_code: int = EXIT_DOMAIN,
    ) -> None:
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        self.exit_code = exit_code
        super().__init__(self.message)

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to dictionary for logging."""
        return {
            "error_code": self.error_code,
            "message": self.message,
            "details": self.details,
            "exit_code": self.exit_code,
        }


# ==========================================
# DOMAIN / NUMERICAL ERRORS
# ==========================================

class DomainError(ThercomError):
    """A precondition or invariant of a numerical operation was violated."""

    def __init__(
        self,
        message: str,
        error_code: str = "DOMAIN_ERROR",
        details: Optional[dict[str, Any]] = None,
    ) -> None:
        super().__init__(message, error_code, details, exit_code=EXIT_DOMAIN)


class ThresholdError(DomainError):
    """Decision thresholds violate their ordering or feasibility interval."""

    def __init__(
        self,
        threshold: str,
        value: float,
        lower: float,
        upper: float,
    ) -> None:
        super().__init__(
            message=(
                f"Threshold '{threshold}'={value:.6g} outside feasible interval "
                f"({lower:.6g}, {upper:.6g})"
            ),
            error_code="THRESHOLD_INFEASIBLE",
            details={"threshold": threshold, "value": value, "lower": lower, "upper": upper},
        )
        self.threshold = threshold


class GridError(DomainError):
    """Search grid is malformed or leaves the feasible region."""

    def __init__(self, axis: str, reason: str, details: Optional[dict[str, Any]] = None) -> None:
        error_details = details or {}
        error_details["axis"] = axis
        super().__init__(
            message=f"Infeasible grid for '{axis}': {reason}",
            error_code="GRID_INFEASIBLE",
            details=error_details,
        )


# ==========================================
# SIMULATION ERRORS
# ==========================================

class SimulationError(ThercomError):
    """Monte Carlo engine failure."""

    def __init__(
        self,
        message: str,
        details: Optional[dict[str, Any]] = None,
    ) -> None:
        super().__init__(
            message=message,
            error_code="SIMULATION_FAILED",
            details=details,
            exit_code=EXIT_DOMAIN,
        )


# ==========================================
# CONFIGURATION ERRORS
# ==========================================

class ConfigurationError(ThercomError):
    """Experiment configuration is invalid or incomplete."""

    def __init__(
        self,
        message: str,
        config_key: Optional[str] = None,
        details: Optional[dict[str, Any]] = None,
    ) -> None:
        error_details = details or {}
        if config_key:
            error_details["config_key"] = config_key
        super().__init__(
            message=message,
            error_code="CONFIGURATION_ERROR",
            details=error_details,
            exit_code=EXIT_CONFIGURATION,
        )
        self.config_key = config_key


# ==========================================
# I/O ERRORS
# ==========================================

class OutputError(ThercomError):
    """Reading or writing a result file failed."""

    def __init__(self, path: str, reason: str) -> None:
        super().__init__(
            message=f"I/O failure on '{path}': {reason}",
            error_code="OUTPUT_ERROR",
            details={"path": path, "reason": reason},
            exit_code=EXIT_IO,
        )
