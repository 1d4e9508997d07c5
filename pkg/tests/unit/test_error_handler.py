"""Exit-status mapping of the CLI error handler."""

import io

import pytest

from src.interfaces.cli import error_handler
from src.interfaces.cli.error_handler import ErrorHandler
from src.interfaces.cli.main import main
from src.shared.errors import (
    EXIT_CONFIGURATION,
    EXIT_DOMAIN,
    EXIT_INTERRUPTED,
    EXIT_IO,
    EXIT_OK,
    EXIT_UNEXPECTED,
    ConfigurationError,
    GridError,
    OutputError,
    ThresholdError,
)

pytestmark = pytest.mark.unit


def _raise(error: BaseException):
    def command() -> None:
        raise error

    return command


@pytest.mark.parametrize(
    ("error", "code"),
    [
        (ConfigurationError("bad key", config_key="alpha"), EXIT_CONFIGURATION),
        (ThresholdError("kappa", 12.0, 1.818, 10.0), EXIT_DOMAIN),
        (GridError("beta", "too narrow"), EXIT_DOMAIN),
        (OutputError("/nowhere/r.csv", "Permission denied"), EXIT_IO),
    ],
)
def test_toolkit_errors(error, code):
    stream = io.StringIO()
    assert ErrorHandler(stream).run(_raise(error)) == code
    assert stream.getvalue().startswith("thercom: error: ")


def test_diagnostic_names_the_key():
    stream = io.StringIO()
    ErrorHandler(stream).run(_raise(ThresholdError("kappa", 12.0, 1.818, 10.0)))
    assert stream.getvalue().rstrip().endswith("[kappa]")


def test_success():
    assert ErrorHandler(io.StringIO()).run(lambda: None) == EXIT_OK


def test_interrupt():
    assert ErrorHandler(io.StringIO()).run(_raise(KeyboardInterrupt())) == EXIT_INTERRUPTED


def test_unexpected_error_from_command(mocker, capsys):
    mocker.patch("src.interfaces.cli.main.run_experiment", side_effect=RuntimeError("boom"))
    assert main(["kljn-theory"]) == EXIT_UNEXPECTED
    assert "RuntimeError: boom" in capsys.readouterr().err


def test_exit_codes_are_distinct():
    codes = [EXIT_OK, EXIT_UNEXPECTED, EXIT_CONFIGURATION, EXIT_DOMAIN, EXIT_IO, EXIT_INTERRUPTED]
    assert len(set(codes)) == len(codes)
    assert error_handler.EXIT_OK is EXIT_OK
