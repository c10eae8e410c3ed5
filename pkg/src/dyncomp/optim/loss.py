"""DCA objective: negative Gaussian predictive information plus an orthonormality penalty."""

from __future__ import annotations

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from dyncomp.core.timeseries import FloatArray, Projection, as_matrix
from dyncomp.covariance.crosscov import CrossCovSet
from dyncomp.covariance.toeplitz import block_toeplitz
from dyncomp.errors import InvalidArgumentError
from dyncomp.predinfo.gaussian import cholesky_factor, logdet_from_factor
from dyncomp.predinfo.spectral import WindowName, cepstral_pi_gradient


def _validate(covs: CrossCovSet, V: FloatArray, T: int, lam: float) -> None:
    if T < 1:
        raise InvalidArgumentError(f"T must be >= 1, got {T}")
    if covs.two_t < 2 * T:
        raise InvalidArgumentError(f"T={T} needs {2 * T} lags but only {covs.two_t} are available")
    if V.ndim != 2 or V.shape[0] != covs.n or V.shape[1] < 1:
        raise InvalidArgumentError(f"V must have shape ({covs.n}, d), got {V.shape}")
    if not lam > 0:
        raise InvalidArgumentError(f"lambda must be positive, got {lam}")


def orthonormality_penalty(V: FloatArray) -> tuple[float, FloatArray]:
    """‖VᵀV - I‖_F² and its gradient 4V(VᵀV - I)."""
    residual = V.T @ V - np.eye(V.shape[1])
    return float(np.sum(residual**2)), 4.0 * V @ residual


def _logdet_and_grad(lags: FloatArray, projected: FloatArray, V: FloatArray, blocks: int) -> tuple[float, FloatArray]:
    """log|Σ| over ``blocks`` steps of the projected process and its gradient in V.

    With G = Σ⁻¹ and A_δ the sum of the (i+δ, i) blocks of G, the gradient is
    Σ_δ w_δ (C_δ V A_δ + C_δᵀ V A_δᵀ) with w_0 = 1 and w_δ = 2 otherwise.
    """
    d = V.shape[1]
    sigma = block_toeplitz(projected, blocks)
    factor = cholesky_factor(sigma, f"projected Σ_{blocks}")
    inverse = scipy.linalg.cho_solve(factor, np.eye(blocks * d), check_finite=False)
    g4 = inverse.reshape(blocks, d, blocks, d)
    grad = np.zeros_like(V)
    for lag in range(blocks):
        a = sum(g4[i + lag, :, i, :] for i in range(blocks - lag))
        weight = 1.0 if lag == 0 else 2.0
        grad += weight * (lags[lag] @ V @ a + lags[lag].T @ V @ a.T)
    return logdet_from_factor(factor), grad


def dca_objective(covs: CrossCovSet, V: FloatArray, T: int, lam: float) -> tuple[float, FloatArray, float]:
    """Loss, gradient and predictive information at V in a single pass."""
    lags = covs.lags[: 2 * T]
    projected = V.T @ lags @ V
    projected[0] = 0.5 * (projected[0] + projected[0].T)
    logdet_t, grad_t = _logdet_and_grad(lags, projected, V, T)
    logdet_2t, grad_2t = _logdet_and_grad(lags, projected, V, 2 * T)
    pi = logdet_t - 0.5 * logdet_2t
    penalty, grad_penalty = orthonormality_penalty(V)
    loss = -pi + lam * penalty
    grad = -(grad_t - 0.5 * grad_2t) + lam * grad_penalty
    return loss, grad, pi


def dca_loss(covs: CrossCovSet, V: Projection | ArrayLike, T: int, lam: float) -> float:
    """-I_T(Vᵀx) + λ‖VᵀV - I‖_F² on unregularized projected covariances."""
    matrix = as_matrix(V)
    _validate(covs, matrix, T, lam)
    return dca_objective(covs, matrix, T, lam)[0]


def dca_grad(covs: CrossCovSet, V: Projection | ArrayLike, T: int, lam: float) -> FloatArray:
    """Gradient of :func:`dca_loss` with respect to V (n × d)."""
    matrix = as_matrix(V)
    _validate(covs, matrix, T, lam)
    return dca_objective(covs, matrix, T, lam)[1]


def freq_deflation_objective(
    covs: CrossCovSet, v: FloatArray, T: int, lam: float, window_fn: WindowName = "hann"
) -> tuple[float, FloatArray, float]:
    """One-direction loss from the cepstral estimate of the autocovariance vᵀC_k v."""
    lags = covs.lags[: 2 * T]
    autocov = np.einsum("i,kij,j->k", v[:, 0], lags, v[:, 0])
    pi, d_autocov = cepstral_pi_gradient(autocov, T, window_fn)
    symmetric = lags + np.transpose(lags, (0, 2, 1))
    d_pi = np.einsum("k,kij,j->i", d_autocov, symmetric, v[:, 0])[:, None]
    penalty, grad_penalty = orthonormality_penalty(v)
    return -pi + lam * penalty, -d_pi + lam * grad_penalty, pi
