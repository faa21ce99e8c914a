"""CSV formatting for trajectories and sweeps."""

import io
from pathlib import Path

import numpy as np
import numpy.typing as npt

from ecoand.config.settings import CSV_FLOAT_FORMAT

TRAJECTORY_COLUMNS = ("t", "x", "v", "u")
SWEEP_COLUMNS = ("rho", "t_p", "energy", "cost")


def format_csv(columns: tuple[str, ...], rows: npt.ArrayLike) -> str:
    """Render rows as CSV text with a header and 9 significant digits."""
    data = np.atleast_2d(np.asarray(rows, dtype=float))
    if data.size and data.shape[1] != len(columns):
        raise ValueError(f"Expected {len(columns)} columns, got {data.shape[1]}")
    buffer = io.StringIO()
    np.savetxt(
        buffer,
        data.reshape(-1, len(columns)),
        fmt=CSV_FLOAT_FORMAT,
        delimiter=",",
        header=",".join(columns),
        comments="",
    )
    return buffer.getvalue()


def write_csv(path: str | Path, columns: tuple[str, ...], rows: npt.ArrayLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as file:
        file.write(format_csv(columns, rows))
