"""Core data types, preprocessing transforms and file formats."""

from dyncomp.core.io import (
    read_json,
    read_matrix_csv,
    read_projection_csv,
    read_series_csv,
    write_json,
    write_matrix_csv,
    write_projection_csv,
    write_series_csv,
)
from dyncomp.core.timeseries import FloatArray, Projection, TimeSeries, as_matrix
from dyncomp.core.transforms import (
    bin_series,
    downsample_series,
    mean_center,
    project_series,
    sqrt_transform,
)

__all__ = [
    "FloatArray",
    "Projection",
    "TimeSeries",
    "as_matrix",
    "bin_series",
    "downsample_series",
    "mean_center",
    "project_series",
    "sqrt_transform",
    "read_json",
    "read_matrix_csv",
    "read_projection_csv",
    "read_series_csv",
    "write_json",
    "write_matrix_csv",
    "write_projection_csv",
    "write_series_csv",
]
