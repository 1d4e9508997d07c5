"""
📁 File: src/interfaces/cli/error_handler.py
Layer: Interfaces (CLI)
Purpose: Map every error raised by a command to an exit status
Depends on: src/shared/errors, src/shared/logger
Used by: main

This handler:
1. Catches all exceptions escaping a command
2. Maps toolkit errors to their exit codes (2 config, 3 domain, 4 I/O)
3. Logs errors with error_code and details
4. Prints a one-line diagnostic to stderr
5. Shows tracebacks of unexpected errors only outside production
"""

import sys
import traceback
from typing import Callable, TextIO

from src.shared.config import get_settings
from src.shared.errors import EXIT_INTERRUPTED, EXIT_OK, EXIT_UNEXPECTED, ThercomError
from src.shared.logger import get_logger

settings = get_settings()
logger = get_logger(__name__)


class ErrorHandler:
    """Runs a command and converts exceptions to exit codes."""

    def __init__(self, stream: TextIO | None = None) -> None:
        self.stream = stream or sys.stderr

    def run(self, command: Callable[[], object]) -> int:
        try:
            command()
            return EXIT_OK
        except ThercomError as e:
            return self._handle_thercom_error(e)
        except KeyboardInterrupt:
            print("thercom: interrupted", file=self.stream)
            return EXIT_INTERRUPTED
        except Exception as e:
            return self._handle_unexpected_error(e)

    def _handle_thercom_error(self, error: ThercomError) -> int:
        logger.error(
            "command_failed",
            error_code=error.error_code,
            message=error.message,
            details=error.details,
            exit_code=error.exit_code,
        )
        key = error.details.get("config_key") or error.details.get("threshold")
        suffix = f" [{key}]" if key else ""
        print(f"thercom: error: {error.message}{suffix}", file=self.stream)
        return error.exit_code

    def _handle_unexpected_error(self, error: Exception) -> int:
        logger.error(
            "unexpected_error_occurred",
            error_type=type(error).__name__,
            error_message=str(error),
            traceback=traceback.format_exc() if not settings.is_production() else None,
        )
        print(f"thercom: internal error: {type(error).__name__}: {error}", file=self.stream)
        return EXIT_UNEXPECTED
