"""CSV and JSON readers/writers for series, matrices and reports."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from dyncomp.core.timeseries import FloatArray, Projection, TimeSeries
from dyncomp.errors import InvalidArgumentError

# 17 significant digits round-trip any float64 exactly.
FLOAT_FORMAT = "%.17g"


def _has_header(frame: pd.DataFrame) -> bool:
    """Whether the first row of a headerless read is non-numeric."""
    first = pd.to_numeric(frame.iloc[0], errors="coerce")
    return bool(first.isna().any())


def read_matrix_csv(path: Path | str) -> FloatArray:
    """Read a numeric CSV (optional header row) into a 2-D float array."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, header=None, dtype=str, skip_blank_lines=True)
    except (OSError, pd.errors.EmptyDataError) as e:
        raise InvalidArgumentError(f"Cannot read CSV {path}: {e}") from e
    if frame.empty:
        raise InvalidArgumentError(f"CSV file is empty: {path}")
    if _has_header(frame):
        frame = frame.iloc[1:]
    try:
        return frame.astype(np.float64).to_numpy()
    except ValueError as e:
        raise InvalidArgumentError(f"Non-numeric value in {path}: {e}") from e


def read_series_csv(path: Path | str, dt: float = 1.0) -> TimeSeries:
    """Read a time series CSV: one row per time step, optional header row."""
    path = Path(path)
    frame = pd.read_csv(path, header=None, dtype=str)
    names: tuple[str, ...] | None = None
    if not frame.empty and _has_header(frame):
        names = tuple(str(v) for v in frame.iloc[0])
    return TimeSeries(read_matrix_csv(path), dt=dt, channel_names=names)


def write_matrix_csv(matrix: np.ndarray, path: Path | str, header: list[str] | None = None) -> Path:
    """Write a 2-D array as CSV with 17-significant-digit floats."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    array = np.asarray(matrix, dtype=np.float64)
    if array.ndim == 1:
        array = array[:, np.newaxis]
    frame = pd.DataFrame(array, columns=header)
    frame.to_csv(path, index=False, header=header is not None, float_format=FLOAT_FORMAT)
    return path


def write_series_csv(series: TimeSeries, path: Path | str) -> Path:
    """Write a TimeSeries; a header row is emitted when channels are named."""
    header = list(series.channel_names) if series.channel_names is not None else None
    return write_matrix_csv(series.data, path, header=header)


def read_projection_csv(path: Path | str) -> Projection:
    """Read an n x d projection matrix, detecting orthonormality."""
    matrix = read_matrix_csv(path)
    gram = matrix.T @ matrix
    orthonormal = bool(np.max(np.abs(gram - np.eye(matrix.shape[1]))) <= 1e-10)
    return Projection(matrix, is_orthonormal=orthonormal)


def write_projection_csv(proj: Projection, path: Path | str) -> Path:
    """Write a projection as n rows by d columns."""
    return write_matrix_csv(proj.matrix, path)


def _to_jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _to_jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


def write_json(data: Any, path: Path | str) -> Path:
    """Write JSON with sorted keys so reruns are byte-identical."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_to_jsonable(data), indent=2, sort_keys=True) + "\n")
    return path


def read_json(path: Path | str) -> Any:
    """Read a JSON document."""
    return json.loads(Path(path).read_text())
