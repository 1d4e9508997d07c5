"""
📁 File: src/shared/logger.py
Layer: Shared (Cross-cutting)
Purpose: Structured logging with run-context support
Depends on: structlog
Used by: All layers

Logging requirements:
- JSON format for machine parsing, console format for desk use
- Run context (seed, figure, subcommand) propagated via contextvars
- Log levels: DEBUG, INFO, WARNING, ERROR, CRITICAL
- stderr only, stdout stays free for command output
"""

import logging
import sys
from typing import Any, Optional

import structlog
from structlog.types import EventDict, Processor

from src.shared.config import get_settings

# Get settings
settings = get_settings()


def add_app_context(logger: logging.Logger, method_name: str, event_dict: EventDict) -> EventDict:
    """
    Add application-wide context to every log entry.

    Args:
        logger: Python logger instance
        method_name: Name of the logging method
        event_dict: Current event dictionary

    Returns:
        Updated event dictionary with app context
    """
    event_dict["app_name"] = settings.APP_NAME
    event_dict["environment"] = settings.ENVIRONMENT
    event_dict["app_version"] = settings.APP_VERSION
    return event_dict


def configure_logging() -> None:
    """
    Configure structlog with context processors and the selected renderer.

    This should be called once at startup.
    """
    shared_processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso", utc=True),
        structlog.processors.StackInfoRenderer(),
        add_app_context,
    ]

    if settings.LOG_FORMAT == "json":
        processors = shared_processors + [
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer(),
        ]
    else:
        processors = shared_processors + [
            structlog.processors.format_exc_info,
            structlog.dev.ConsoleRenderer(colors=False),
        ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, settings.LOG_LEVEL.upper()),
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """
    Get a configured logger instance.

    Args:
        name: Logger name (typically __name__ of the module)

    Returns:
        Configured structlog logger

    Example:
        >>> logger = get_logger(__name__)
        >>> logger.info("simulation_started", seed=7, n_samples=100)
    """
    return structlog.get_logger(name)


def bind_context(**kwargs: Any) -> None:
    """
    Bind context variables that will be included in all subsequent logs.

    Args:
        **kwargs: Key-value pairs to bind to the logging context

    Example:
        >>> bind_context(command="figure", figure="fig7", seed=1)
        >>> logger.info("figure_started")
        # Output includes command, figure, seed automatically
    """
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(**kwargs)


def clear_context() -> None:
    """Clear all bound context variables."""
    structlog.contextvars.clear_contextvars()


# ==========================================
# CONVENIENCE FUNCTIONS FOR SPECIFIC LAYERS
# ==========================================

def log_simulation(
    logger: structlog.stdlib.BoundLogger,
    scheme: str,
    bits_simulated: int,
    ber: float,
    chunks: int,
    elapsed_ms: float,
    discarded: Optional[int] = None,
) -> None:
    """
    Log a finished Monte Carlo run with standard metrics.

    Args:
        logger: Logger instance
        scheme: "kljn" or "thermod"
        bits_simulated: Number of simulated bit intervals
        ber: Primary-party bit error rate
        chunks: Number of merged RNG chunks
        elapsed_ms: Wall time in milliseconds
        discarded: ND-I discard count (optional)
    """
    logger.info(
        "simulation_completed",
        scheme=scheme,
        bits_simulated=bits_simulated,
        ber=ber,
        chunks=chunks,
        elapsed_ms=round(elapsed_ms, 2),
        discarded=discarded,
        layer="layer3_simulation",
    )


def log_optimization(
    logger: structlog.stdlib.BoundLogger,
    detector: str,
    grid_points: int,
    block_points: int,
    best: dict[str, float],
    best_bep: float,
    two_pass: bool,
) -> None:
    """
    Log a finished threshold search.

    Args:
        logger: Logger instance
        detector: Detector that was optimized
        grid_points: Size of the full product grid
        block_points: Largest block lattice actually evaluated
        best: Winning threshold values
        best_bep: Objective at the winner
        two_pass: Whether the coarse-to-fine search was used
    """
    logger.info(
        "threshold_search_completed",
        detector=detector,
        grid_points=grid_points,
        block_points=block_points,
        best=best,
        best_bep=best_bep,
        two_pass=two_pass,
        layer="layer4_optimization",
    )


# Initialize logging on module import
configure_logging()
