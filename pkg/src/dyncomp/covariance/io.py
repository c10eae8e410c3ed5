"""Directory format for CrossCovSet: C_0000.csv ... plus manifest.json."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from dyncomp.core.io import read_json, read_matrix_csv, write_json, write_matrix_csv
from dyncomp.covariance.crosscov import CrossCovSet
from dyncomp.errors import InvalidArgumentError

MANIFEST_NAME = "manifest.json"


def lag_filename(lag: int) -> str:
    """File name for lag ``lag``."""
    return f"C_{lag:04d}.csv"


def save_crosscov(covs: CrossCovSet, directory: Path | str) -> Path:
    """Write every lag as CSV plus a JSON manifest."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for lag in range(covs.two_t):
        write_matrix_csv(covs[lag], directory / lag_filename(lag))
    write_json(
        {"n": covs.n, "two_t": covs.two_t, "shift_applied": covs.shift_applied},
        directory / MANIFEST_NAME,
    )
    return directory


def load_crosscov(directory: Path | str) -> CrossCovSet:
    """Read a directory written by :func:`save_crosscov`."""
    directory = Path(directory)
    manifest_path = directory / MANIFEST_NAME
    if not manifest_path.exists():
        raise InvalidArgumentError(f"No {MANIFEST_NAME} in {directory}")
    manifest = read_json(manifest_path)
    lags = np.stack(
        [read_matrix_csv(directory / lag_filename(lag)) for lag in range(int(manifest["two_t"]))]
    )
    if lags.shape[1] != int(manifest["n"]):
        raise InvalidArgumentError(
            f"Manifest says n={manifest['n']} but matrices are {lags.shape[1]}x{lags.shape[2]}"
        )
    return CrossCovSet(lags, shift_applied=float(manifest.get("shift_applied", 0.0)))
