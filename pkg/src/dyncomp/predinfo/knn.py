"""Kraskov-Stögbauer-Grassberger nearest-neighbor mutual information."""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from numpy.typing import ArrayLike
from scipy.spatial import cKDTree
from scipy.special import digamma

from dyncomp.core.timeseries import FloatArray, TimeSeries
from dyncomp.errors import InsufficientDataError, InvalidArgumentError, JitterRequiredError
from dyncomp.predinfo.estimate import PIEstimate, PIMethod

MIN_SAMPLES = 50


def _as_samples(values: ArrayLike, name: str) -> FloatArray:
    array = np.asarray(values, dtype=np.float64)
    if array.ndim == 1:
        array = array[:, None]
    if array.ndim != 2:
        raise InvalidArgumentError(f"{name} must be 1-D or 2-D, got shape {array.shape}")
    return array


def _strict_neighbor_counts(points: FloatArray, radii: FloatArray) -> np.ndarray:
    tree = cKDTree(points)
    counts = tree.query_ball_point(points, r=np.nextafter(radii, 0), p=np.inf, return_length=True)
    return np.asarray(counts) - 1


def mi_knn(x: ArrayLike, y: ArrayLike, k: int = 3) -> PIEstimate:
    """Estimate I(x; y) in nats from paired samples with the first KSG estimator.

    Args:
        x: Samples of shape (N, dx)
        y: Samples of shape (N, dy)
        k: Neighbor count in the joint space (max norm)
    """
    xs = _as_samples(x, "x")
    ys = _as_samples(y, "y")
    n_samples = len(xs)
    if len(ys) != n_samples:
        raise InvalidArgumentError(f"x has {n_samples} samples but y has {len(ys)}")
    if n_samples < MIN_SAMPLES:
        raise InsufficientDataError(f"kNN estimate needs at least {MIN_SAMPLES} samples, got {n_samples}")
    if not 1 <= k < n_samples:
        raise InvalidArgumentError(f"k must lie in [1, {n_samples - 1}], got {k}")

    joint = np.hstack([xs, ys])
    distances, _ = cKDTree(joint).query(joint, k=k + 1, p=np.inf)
    eps = distances[:, -1]
    if np.any(eps == 0):
        raise JitterRequiredError(
            f"{int(np.count_nonzero(eps == 0))} samples have a zero {k}-th neighbor distance; "
            "add small jitter to break ties"
        )
    n_x = _strict_neighbor_counts(xs, eps)
    n_y = _strict_neighbor_counts(ys, eps)
    value = digamma(k) + digamma(n_samples) - np.mean(digamma(n_x + 1) + digamma(n_y + 1))
    return PIEstimate(
        value=float(value),
        method=PIMethod.KNN,
        diagnostics={"k": k, "n_samples": n_samples},
    )


def pi_knn(series: TimeSeries | ArrayLike, T: int = 1, k: int = 3) -> PIEstimate:
    """kNN estimate of I(past window; future window), each of length T."""
    data = series.data if isinstance(series, TimeSeries) else _as_samples(series, "series")
    if T < 1:
        raise InvalidArgumentError(f"T must be >= 1, got {T}")
    if len(data) < 2 * T:
        raise InsufficientDataError(f"Series needs at least {2 * T} samples for T={T}")
    windows = sliding_window_view(data, 2 * T, axis=0)  # (N, channels, 2T)
    past = windows[:, :, :T].reshape(len(windows), -1)
    future = windows[:, :, T:].reshape(len(windows), -1)
    estimate = mi_knn(past, future, k)
    return PIEstimate(
        value=estimate.value,
        method=PIMethod.KNN,
        T=T,
        diagnostics=estimate.diagnostics,
    )
