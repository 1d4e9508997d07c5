"""
📁 File: src/interfaces/cli/svg.py
Layer: Interfaces (CLI)
Purpose: Line-chart SVG emission for result tables
Depends on: matplotlib (Agg backend), pandas
Used by: runner, figures

Best effort: the CSV is always the primary artifact. SVGs carry no creation
date and a fixed hash salt so repeated runs produce identical files.
"""

from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from src.shared.errors import OutputError  # noqa: E402
from src.shared.logger import get_logger  # noqa: E402

logger = get_logger(__name__)

plt.rcParams["svg.hashsalt"] = "thercom"


def _label(names: list[str], key: object) -> str:
    parts = key if isinstance(key, tuple) else (key,)
    return ", ".join(f"{name}={value}" for name, value in zip(names, parts))


def write_line_svg(
    path: str | Path,
    frame: pd.DataFrame,
    x: str,
    curves: list[str],
    group_by: Optional[list[str]] = None,
    markers: Optional[list[str]] = None,
    title: str = "",
    ylabel: str = "BEP / BER",
    logy: bool = True,
) -> Path:
    """
    Plot `curves` (lines) and `markers` (simulation points) against `x`, one
    series per group.

    Raises:
        OutputError: If the file cannot be written
    """
    target = Path(path)
    groups = frame.groupby(group_by, sort=True) if group_by else [("", frame)]
    fig, ax = plt.subplots(figsize=(7, 5))
    for key, part in groups:
        part = part.sort_values(x)
        prefix = _label(group_by or [], key)
        for column in curves:
            values = part[column].to_numpy(dtype=float)
            if np.all(np.isnan(values)):
                continue
            ax.plot(part[x], values, "-", label=f"{column} {prefix}".strip())
        for column in markers or []:
            values = part[column].to_numpy(dtype=float)
            if np.all(np.isnan(values)):
                continue
            ax.plot(part[x], values, "o", fillstyle="none", label=f"{column} {prefix}".strip())
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(x)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(target, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise OutputError(str(target), exc.strerror or str(exc)) from exc
    finally:
        plt.close(fig)
    logger.info("figure_written", path=str(target))
    return target
