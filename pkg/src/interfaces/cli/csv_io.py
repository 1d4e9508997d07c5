"""
📁 File: src/interfaces/cli/csv_io.py
Layer: Interfaces (CLI)
Purpose: Result CSV writer and reader
Depends on: pandas
Used by: runner, figures, tests

File layout:
    # tool = thercom-sim
    # version = 0.1.0
    # seed = 20220601
    # ... every resolved configuration key
    N,bep_theory
    50,2.51234e-02

Floats are written with six significant digits ('%.5e'), integers plainly,
missing values as 'nan'; '\n' line endings throughout.
"""

from pathlib import Path
from typing import Any

import pandas as pd

from src.shared.config import get_settings
from src.shared.errors import OutputError
from src.shared.logger import get_logger

logger = get_logger(__name__)
settings = get_settings()

FLOAT_FORMAT = "%.5e"
_META_PREFIX = "# "


def _format_meta(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_results_csv(path: str | Path, frame: pd.DataFrame, metadata: dict[str, Any]) -> Path:
    """
    Write metadata comment lines, then the table.

    Raises:
        OutputError: If the file cannot be written
    """
    target = Path(path)
    header = {"tool": settings.APP_NAME, "version": settings.APP_VERSION, **metadata}
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8", newline="") as handle:
            for key, value in header.items():
                handle.write(f"{_META_PREFIX}{key} = {_format_meta(value)}\n")
            frame.to_csv(
                handle,
                index=False,
                float_format=FLOAT_FORMAT,
                na_rep="nan",
                lineterminator="\n",
            )
    except OSError as exc:
        raise OutputError(str(target), exc.strerror or str(exc)) from exc
    logger.info("results_written", path=str(target), rows=len(frame), columns=list(frame.columns))
    return target


def read_results_csv(path: str | Path) -> tuple[dict[str, str], pd.DataFrame]:
    """
    Read a file produced by write_results_csv.

    Returns:
        (metadata with string values, table)

    Raises:
        OutputError: If the file is missing or unreadable
    """
    source = Path(path)
    metadata: dict[str, str] = {}
    try:
        with source.open("r", encoding="utf-8") as handle:
            skip = 0
            for line in handle:
                if not line.startswith("#"):
                    break
                key, _, value = line[1:].partition("=")
                metadata[key.strip()] = value.strip()
                skip += 1
        frame = pd.read_csv(source, skiprows=skip)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise OutputError(str(source), str(exc)) from exc
    return metadata, frame
