"""Lagged cross-covariance estimation and projection."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from dyncomp.core.timeseries import FloatArray, Projection, TimeSeries, as_matrix
from dyncomp.errors import InsufficientDataError, InvalidArgumentError
from dyncomp.parallel import map_ordered

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-10
PSD_TOL = 1e-8
CENTERING_TOL = 1e-6


@dataclass(frozen=True)
class CrossCovSet:
    """Ordered lagged cross-covariances C_0, ..., C_{2T-1}.

    ``lags[k]`` is C_k = <x_t x_{t+k}ᵀ>_t. ``shift_applied`` accumulates any
    diagonal loading added to C_0 by regularization.
    """

    lags: FloatArray
    shift_applied: float = 0.0

    def __post_init__(self) -> None:
        lags = np.array(self.lags, dtype=np.float64)
        if lags.ndim == 1:
            lags = lags.reshape(-1, 1, 1)
        if lags.ndim != 3 or lags.shape[1] != lags.shape[2] or lags.shape[0] < 1:
            raise InvalidArgumentError(
                f"lags must have shape (num_lags, n, n), got {lags.shape}"
            )
        if not np.all(np.isfinite(lags)):
            raise InvalidArgumentError("Cross-covariances contain non-finite entries")
        c0 = lags[0]
        scale = max(1.0, float(np.max(np.abs(c0))))
        if np.max(np.abs(c0 - c0.T)) > SYMMETRY_TOL * scale:
            raise InvalidArgumentError("C_0 is not symmetric")
        if np.linalg.eigvalsh(c0)[0] < -PSD_TOL * scale:
            raise InvalidArgumentError("C_0 is not positive semidefinite")
        lags.flags.writeable = False
        object.__setattr__(self, "lags", lags)

    @property
    def n(self) -> int:
        """Channel count."""
        return int(self.lags.shape[1])

    @property
    def two_t(self) -> int:
        """Number of available lags."""
        return int(self.lags.shape[0])

    def __getitem__(self, lag: int) -> FloatArray:
        return self.lags[lag]

    def truncated(self, num_lags: int) -> CrossCovSet:
        """The first ``num_lags`` lags."""
        if not 1 <= num_lags <= self.two_t:
            raise InvalidArgumentError(f"Cannot keep {num_lags} of {self.two_t} lags")
        return CrossCovSet(self.lags[:num_lags], shift_applied=self.shift_applied)

    def at_stride(self, stride: int) -> CrossCovSet:
        """Lags [C_0, C_s, C_2s, ...]: the covariances of the subsampled process."""
        if stride < 1:
            raise InvalidArgumentError(f"stride must be >= 1, got {stride}")
        return CrossCovSet(self.lags[::stride], shift_applied=self.shift_applied)

    def time_reversed(self) -> CrossCovSet:
        """Covariances of the time-reversed process (C_k -> C_kᵀ)."""
        return CrossCovSet(np.transpose(self.lags, (0, 2, 1)), shift_applied=self.shift_applied)


def _check_centered(series: TimeSeries) -> None:
    means = series.data.mean(axis=0)
    stds = series.data.std(axis=0)
    off = np.abs(means) > CENTERING_TOL * np.maximum(stds, np.finfo(float).tiny)
    off &= stds > 0
    if np.any(off):
        worst = int(np.argmax(np.abs(means) / np.maximum(stds, np.finfo(float).tiny)))
        logger.warning(
            "Series does not look mean-centered (%s has mean %.3g, std %.3g); "
            "call mean_center first",
            series.channel_label(worst),
            means[worst],
            stds[worst],
        )


def estimate_crosscov(
    series: TimeSeries, num_lags: int, chunk: int | None = None
) -> CrossCovSet:
    """Estimate C_0 ... C_{num_lags-1} from (centered) data.

    Args:
        series: Mean-centered series
        num_lags: Number of lags to estimate (2T for window length T)
        chunk: Segment length for trial-structured data. Products never pair
            samples from different segments.

    Returns:
        CrossCovSet with per-lag normalization 1 / (number of pairs)
    """
    if num_lags < 1:
        raise InvalidArgumentError(f"num_lags must be >= 1, got {num_lags}")
    if num_lags >= series.n_steps:
        raise InsufficientDataError(
            f"num_lags={num_lags} requires more than {series.n_steps} samples"
        )
    if chunk is not None:
        if chunk < 1:
            raise InvalidArgumentError(f"chunk must be >= 1, got {chunk}")
        if num_lags >= chunk:
            raise InsufficientDataError(
                f"num_lags={num_lags} must be smaller than the segment length {chunk}"
            )
    _check_centered(series)

    data = series.data
    step = series.n_steps if chunk is None else chunk
    segments = [data[start : start + step] for start in range(0, series.n_steps, step)]

    def lag_cov(lag: int) -> FloatArray:
        total = np.zeros((series.n_channels, series.n_channels))
        count = 0
        for segment in segments:
            pairs = len(segment) - lag
            if pairs <= 0:
                continue
            total += segment[:pairs].T @ segment[lag:]
            count += pairs
        return total / count

    lags = np.stack(map_ordered(lag_cov, range(num_lags)))
    lags[0] = 0.5 * (lags[0] + lags[0].T)
    return CrossCovSet(lags)


def project_crosscov(covs: CrossCovSet, proj: Projection | ArrayLike) -> CrossCovSet:
    """Map every lag to Vᵀ C_k V."""
    matrix = as_matrix(proj)
    if matrix.shape[0] != covs.n:
        raise InvalidArgumentError(
            f"Projection has {matrix.shape[0]} rows but covariances are {covs.n}x{covs.n}"
        )
    projected = matrix.T @ covs.lags @ matrix
    projected[0] = 0.5 * (projected[0] + projected[0].T)
    return CrossCovSet(projected, shift_applied=covs.shift_applied)
