"""Block-Toeplitz spatiotemporal covariance assembly and regularization."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from dyncomp.core.timeseries import FloatArray
from dyncomp.covariance.crosscov import SYMMETRY_TOL, CrossCovSet
from dyncomp.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

DEFAULT_FLOOR = 1e-6


def block_toeplitz(lags: np.ndarray, T: int) -> FloatArray:
    """Dense (nT x nT) matrix with block (i, j) = C_{j-i} above the diagonal.

    Blocks below the diagonal are the transposes, so the result is symmetric
    whenever C_0 is.
    """
    n = lags.shape[1]
    dense = np.empty((n * T, n * T))
    for i in range(T):
        for j in range(i, T):
            block = lags[j - i]
            dense[i * n : (i + 1) * n, j * n : (j + 1) * n] = block
            if j > i:
                dense[j * n : (j + 1) * n, i * n : (i + 1) * n] = block.T
    return dense


@dataclass(frozen=True)
class BlockToeplitzCov:
    """Spatiotemporal covariance Σ_T of a length-T window.

    Attributes:
        blocks: Source cross-covariances (after any regularization)
        T: Window length in steps
        dense: Realized (nT x nT) symmetric matrix
        shift: Diagonal shift added by the regularization that produced this matrix
    """

    blocks: CrossCovSet
    T: int
    dense: FloatArray
    shift: float = 0.0

    def __post_init__(self) -> None:
        dense = self.dense
        scale = max(1.0, float(np.max(np.abs(dense))))
        if np.max(np.abs(dense - dense.T)) > SYMMETRY_TOL * scale:
            raise InvalidArgumentError("Spatiotemporal covariance is not symmetric")
        dense.flags.writeable = False

    @property
    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the dense matrix."""
        return float(np.linalg.eigvalsh(self.dense)[0])


def assemble_block_toeplitz(covs: CrossCovSet, T: int) -> BlockToeplitzCov:
    """Assemble Σ_T from the first T lags of ``covs``."""
    if T < 1:
        raise InvalidArgumentError(f"T must be >= 1, got {T}")
    if T > covs.two_t:
        raise InvalidArgumentError(f"T={T} needs {T} lags but only {covs.two_t} are available")
    return BlockToeplitzCov(blocks=covs, T=T, dense=block_toeplitz(covs.lags, T))


def regularize_psd(cov: BlockToeplitzCov, floor: float = DEFAULT_FLOOR) -> BlockToeplitzCov:
    """Lift the spectrum of Σ_T so its smallest eigenvalue is at least ``floor``.

    The shift is added to the diagonal of C_0, which is the same as adding
    uncorrelated noise to every channel at every time step.
    """
    lam_min = cov.min_eigenvalue
    if lam_min >= floor:
        return cov
    shift = floor - lam_min
    logger.info("Regularizing spatiotemporal covariance: adding %.3g to diag(C_0)", shift)
    lags = np.array(cov.blocks.lags)
    lags[0] += shift * np.eye(cov.blocks.n)
    blocks = CrossCovSet(lags, shift_applied=cov.blocks.shift_applied + shift)
    return BlockToeplitzCov(
        blocks=blocks, T=cov.T, dense=block_toeplitz(blocks.lags, cov.T), shift=shift
    )


def regularize_crosscov(covs: CrossCovSet, T: int, floor: float = DEFAULT_FLOOR) -> CrossCovSet:
    """Cross-covariances whose Σ_T has smallest eigenvalue >= ``floor``."""
    return regularize_psd(assemble_block_toeplitz(covs, T), floor).blocks
