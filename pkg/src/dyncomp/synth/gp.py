"""Stationary Gaussian processes with exponential and squared-exponential kernels."""

from __future__ import annotations

import numpy as np
import scipy.linalg
import scipy.signal

from dyncomp.config.schema import KernelSpec
from dyncomp.core.timeseries import FloatArray, TimeSeries
from dyncomp.covariance.crosscov import CrossCovSet
from dyncomp.errors import InvalidArgumentError, KernelDegeneracyError

KERNEL_JITTER = 1e-10
MAX_WINDOW = 2048


def kernel_autocov(kernel: KernelSpec, num_lags: int) -> FloatArray:
    """f(0), ..., f(num_lags - 1) for a unit-variance kernel."""
    if num_lags < 1:
        raise InvalidArgumentError(f"num_lags must be >= 1, got {num_lags}")
    lags = np.arange(num_lags, dtype=np.float64)
    if kernel.name == "exponential":
        return np.exp(-lags / kernel.tau)
    return np.exp(-(lags**2) / kernel.tau**2)


def kernel_crosscov(kernel: KernelSpec, num_lags: int) -> CrossCovSet:
    """Exact 1 × 1 cross-covariances of the kernel's process."""
    return CrossCovSet(kernel_autocov(kernel, num_lags))


def _ar1(tau: float, n_steps: int, rng: np.random.Generator) -> FloatArray:
    a = np.exp(-1.0 / tau)
    innovation_scale = np.sqrt(-np.expm1(-2.0 / tau))
    initial = rng.standard_normal()
    innovations = rng.standard_normal(n_steps)
    y, _ = scipy.signal.lfilter([innovation_scale], [1.0, -a], innovations, zi=[a * initial])
    return np.asarray(y, dtype=np.float64)


def _windowed_cholesky(kernel: KernelSpec, n_steps: int, rng: np.random.Generator) -> FloatArray:
    window = min(n_steps, MAX_WINDOW)
    f = kernel_autocov(kernel, window)
    cov = scipy.linalg.toeplitz(f) + KERNEL_JITTER * np.eye(window)
    try:
        factor = scipy.linalg.cholesky(cov, lower=True)
    except np.linalg.LinAlgError as e:
        raise KernelDegeneracyError(
            f"{kernel.name} kernel matrix (tau={kernel.tau}, {window} steps) is not positive definite",
            float(np.linalg.cond(cov)),
        ) from e
    n_windows = -(-n_steps // window)
    samples = factor @ rng.standard_normal((window, n_windows))
    return np.asarray(samples.T.ravel()[:n_steps], dtype=np.float64)


def gp_generate(kernel: KernelSpec, n_steps: int, seed: int = 0) -> TimeSeries:
    """Sample a unit-variance stationary Gaussian process.

    The exponential kernel is the AR(1) process y_t = A y_{t-1} + e_t with
    A = exp(-1/τ), sampled exactly. The squared-exponential kernel is sampled
    in independent windows of up to 2048 steps from one Cholesky factor, so
    samples in different windows are uncorrelated.
    """
    if n_steps < 2:
        raise InvalidArgumentError(f"n_steps must be >= 2, got {n_steps}")
    rng = np.random.default_rng(seed)
    if kernel.name == "exponential":
        values = _ar1(kernel.tau, n_steps, rng)
    else:
        values = _windowed_cholesky(kernel, n_steps, rng)
    return TimeSeries(values[:, np.newaxis], channel_names=("y",))
