"""First-order vector autoregressions with exact population covariances."""

from __future__ import annotations

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from dyncomp.core.timeseries import FloatArray, TimeSeries
from dyncomp.covariance.crosscov import CrossCovSet
from dyncomp.errors import InvalidArgumentError


def _check_system(a: ArrayLike, q: ArrayLike) -> tuple[FloatArray, FloatArray]:
    dynamics = np.atleast_2d(np.asarray(a, dtype=np.float64))
    noise = np.atleast_2d(np.asarray(q, dtype=np.float64))
    n = dynamics.shape[0]
    if dynamics.shape != (n, n) or noise.shape != (n, n):
        raise InvalidArgumentError("A and Q must be square matrices of the same size")
    radius = float(np.max(np.abs(np.linalg.eigvals(dynamics))))
    if radius >= 1.0:
        raise InvalidArgumentError(f"A has spectral radius {radius:.4g}; the process is not stationary")
    if np.linalg.eigvalsh(0.5 * (noise + noise.T))[0] < -1e-12:
        raise InvalidArgumentError("Q must be positive semidefinite")
    return dynamics, 0.5 * (noise + noise.T)


def _sqrt_psd(matrix: FloatArray) -> FloatArray:
    values, vectors = np.linalg.eigh(matrix)
    return np.asarray(vectors * np.sqrt(np.clip(values, 0.0, None)), dtype=np.float64)


def stationary_covariance(a: ArrayLike, q: ArrayLike) -> FloatArray:
    """C_0 solving C_0 = A C_0 Aᵀ + Q."""
    dynamics, noise = _check_system(a, q)
    c0 = scipy.linalg.solve_discrete_lyapunov(dynamics, noise)
    return np.asarray(0.5 * (c0 + c0.T), dtype=np.float64)


def var1_crosscov(a: ArrayLike, q: ArrayLike, num_lags: int) -> CrossCovSet:
    """Population C_k = C_0 (Aᵀ)^k of x_{t+1} = A x_t + e_t, e_t ~ N(0, Q)."""
    if num_lags < 1:
        raise InvalidArgumentError(f"num_lags must be >= 1, got {num_lags}")
    dynamics = np.atleast_2d(np.asarray(a, dtype=np.float64))
    c0 = stationary_covariance(a, q)
    lags = [c0]
    for _ in range(1, num_lags):
        lags.append(lags[-1] @ dynamics.T)
    return CrossCovSet(np.stack(lags))


def var1_generate(a: ArrayLike, q: ArrayLike, n_steps: int, seed: int = 0) -> TimeSeries:
    """Sample a stationary trajectory, starting from the stationary distribution."""
    if n_steps < 2:
        raise InvalidArgumentError(f"n_steps must be >= 2, got {n_steps}")
    dynamics, noise = _check_system(a, q)
    rng = np.random.default_rng(seed)
    n = dynamics.shape[0]
    state = _sqrt_psd(stationary_covariance(dynamics, noise)) @ rng.standard_normal(n)
    innovations = rng.standard_normal((n_steps, n)) @ _sqrt_psd(noise).T
    out = np.empty((n_steps, n))
    for t in range(n_steps):
        out[t] = state
        state = dynamics @ state + innovations[t]
    return TimeSeries(out)
