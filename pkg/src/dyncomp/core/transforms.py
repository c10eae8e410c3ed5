"""Preprocessing transforms for raw time series.

All transforms are pure: they return a new TimeSeries and never modify their
input. Channel order is always preserved.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
from scipy.ndimage import uniform_filter1d

from dyncomp.core.timeseries import Projection, TimeSeries, as_matrix
from dyncomp.errors import DomainError, InvalidArgumentError

BinMode = Literal["sum", "mean"]


def mean_center(series: TimeSeries, window: int | None = None) -> TimeSeries:
    """Subtract the mean from every channel.

    Args:
        series: Input series
        window: Odd width in steps of a centered sliding window. When omitted
            the global column mean is subtracted.

    Returns:
        Centered series with the same shape

    Edges are handled by reflecting the series about its first and last sample
    (``numpy.pad(mode="reflect")`` convention), so every sample is centered on a
    full-width average.
    """
    data = series.data
    if window is None:
        return series.with_data(data - data.mean(axis=0))
    if window <= 0 or window > series.n_steps:
        raise InvalidArgumentError(
            f"window must lie in [1, {series.n_steps}], got {window}"
        )
    if window % 2 == 0:
        raise InvalidArgumentError(f"window must be odd so it is centered on each sample, got {window}")
    local_mean = uniform_filter1d(data, size=window, axis=0, mode="mirror")
    return series.with_data(data - local_mean)


def sqrt_transform(series: TimeSeries) -> TimeSeries:
    """Elementwise square root of a nonnegative series (e.g. spike counts)."""
    data = series.data
    negative = np.argwhere(data < 0)
    if negative.size:
        t, c = (int(i) for i in negative[0])
        raise DomainError(
            f"sqrt_transform requires nonnegative data; found {data[t, c]!r} "
            f"in {series.channel_label(c)} at time index {t}"
        )
    return series.with_data(np.sqrt(data))


def bin_series(series: TimeSeries, bin_width: int, mode: BinMode = "sum") -> TimeSeries:
    """Aggregate non-overlapping bins of ``bin_width`` steps.

    Trailing samples that do not fill a whole bin are dropped.
    """
    if bin_width < 1:
        raise InvalidArgumentError(f"bin_width must be >= 1, got {bin_width}")
    if bin_width > series.n_steps:
        raise InvalidArgumentError(
            f"bin_width {bin_width} exceeds series length {series.n_steps}"
        )
    if mode not in ("sum", "mean"):
        raise InvalidArgumentError(f"Unknown bin mode: {mode}")
    n_bins = series.n_steps // bin_width
    blocks = series.data[: n_bins * bin_width].reshape(n_bins, bin_width, series.n_channels)
    binned = blocks.sum(axis=1) if mode == "sum" else blocks.mean(axis=1)
    return series.with_data(binned, dt=series.dt * bin_width)


def downsample_series(series: TimeSeries, factor: int) -> TimeSeries:
    """Keep every ``factor``-th sample, starting with the first."""
    if factor < 1:
        raise InvalidArgumentError(f"factor must be >= 1, got {factor}")
    return series.with_data(series.data[::factor], dt=series.dt * factor)


def project_series(series: TimeSeries, proj: Projection | np.ndarray) -> TimeSeries:
    """Projected series y_t = Vᵀ x_t."""
    matrix = as_matrix(proj)
    if matrix.shape[0] != series.n_channels:
        raise InvalidArgumentError(
            f"Projection has {matrix.shape[0]} rows but the series has "
            f"{series.n_channels} channels"
        )
    if matrix.shape[1] < 1:
        raise InvalidArgumentError("Projection must have at least one column")
    return series.with_data(series.data @ matrix, channel_names=None)
