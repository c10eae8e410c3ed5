"""Time-domain Gaussian predictive information from block-Toeplitz log-determinants."""

from __future__ import annotations

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from dyncomp.core.timeseries import FloatArray, Projection, as_matrix
from dyncomp.covariance.crosscov import CrossCovSet
from dyncomp.covariance.toeplitz import DEFAULT_FLOOR, block_toeplitz, regularize_crosscov
from dyncomp.errors import InvalidArgumentError, NumericalDegeneracyError
from dyncomp.predinfo.estimate import PIEstimate, PIMethod


def cholesky_factor(matrix: FloatArray, what: str = "covariance") -> tuple[FloatArray, bool]:
    """``scipy.linalg.cho_factor`` that reports failures as NumericalDegeneracyError."""
    try:
        return scipy.linalg.cho_factor(matrix, lower=True, check_finite=False)  # type: ignore[no-any-return]
    except np.linalg.LinAlgError as e:
        with np.errstate(all="ignore"):
            condition = float(np.linalg.cond(matrix))
        raise NumericalDegeneracyError(f"Cholesky factorization of {what} failed", condition) from e


def logdet_from_factor(factor: tuple[FloatArray, bool]) -> float:
    """log|Σ| from a Cholesky factor."""
    return float(2.0 * np.sum(np.log(np.diag(factor[0]))))


def logdet(matrix: FloatArray, what: str = "covariance") -> float:
    """log-determinant of a symmetric positive-definite matrix."""
    return logdet_from_factor(cholesky_factor(matrix, what))


def pi_time_domain(
    covs: CrossCovSet,
    T: int,
    regularize: bool = True,
    floor: float = DEFAULT_FLOOR,
) -> PIEstimate:
    """Gaussian predictive information log|Σ_T| - ½ log|Σ_2T| in nats.

    Args:
        covs: Cross-covariances with at least 2T lags
        T: Past/future window length
        regularize: Lift Σ_2T to a minimum eigenvalue of ``floor`` first
        floor: Minimum eigenvalue used when regularizing
    """
    if T < 1:
        raise InvalidArgumentError(f"T must be >= 1, got {T}")
    if covs.two_t < 2 * T:
        raise InvalidArgumentError(f"T={T} needs {2 * T} lags but only {covs.two_t} are available")
    lags = covs.truncated(2 * T)
    shift_before = lags.shift_applied
    if regularize:
        lags = regularize_crosscov(lags, 2 * T, floor)
    sigma_2t = block_toeplitz(lags.lags, 2 * T)
    size_t = covs.n * T
    logdet_t = logdet(sigma_2t[:size_t, :size_t], "Σ_T")
    logdet_2t = logdet(sigma_2t, "Σ_2T")
    return PIEstimate(
        value=logdet_t - 0.5 * logdet_2t,
        method=PIMethod.TIME_DOMAIN,
        T=T,
        diagnostics={
            "logdet_T": logdet_t,
            "logdet_2T": logdet_2t,
            "shift": lags.shift_applied - shift_before,
        },
    )


def gaussian_lagged_mi(
    covs: CrossCovSet,
    past: Projection | ArrayLike,
    future: Projection | ArrayLike | None = None,
    lag: int = 1,
) -> float:
    """Gaussian mutual information I(Uᵀx_t ; Vᵀx_{t+lag}) in nats.

    With ``future`` omitted the same projection is used on both sides.
    """
    if not 1 <= lag < covs.two_t:
        raise InvalidArgumentError(f"lag must lie in [1, {covs.two_t - 1}], got {lag}")
    u = as_matrix(past)
    v = u if future is None else as_matrix(future)
    if u.shape[0] != covs.n or v.shape[0] != covs.n:
        raise InvalidArgumentError("Projection row count does not match the covariances")
    c0 = covs[0]
    cross = u.T @ covs[lag] @ v
    a = u.T @ c0 @ u
    b = v.T @ c0 @ v
    joint = np.block([[a, cross], [cross.T, b]])
    return 0.5 * (logdet(a) + logdet(b) - logdet(0.5 * (joint + joint.T), "joint covariance"))
