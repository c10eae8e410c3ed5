"""Linear reference methods: PCA, SFA and CCA on (lagged) covariances."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from dyncomp.baselines.eigen import EigenDecomposition, check_symmetric, fix_signs, inv_sqrtm
from dyncomp.core.timeseries import FloatArray, Projection
from dyncomp.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


def _check_dimension(d: int, n: int) -> None:
    if not 1 <= d <= n:
        raise InvalidArgumentError(f"d must lie in [1, {n}], got {d}")


def _check_lagged(c0: FloatArray, c1: ArrayLike) -> FloatArray:
    lagged = np.asarray(c1, dtype=np.float64)
    if lagged.shape != c0.shape:
        raise InvalidArgumentError(f"C1 has shape {lagged.shape} but C0 has shape {c0.shape}")
    return lagged


def pca(c0: ArrayLike, d: int) -> Projection:
    """Top-d eigenvectors of the covariance (maximum-variance subspace)."""
    eig = EigenDecomposition.of(c0, "C0")
    _check_dimension(d, len(eig.values))
    return Projection(eig.top(d), is_orthonormal=True)


def sfa(c0: ArrayLike, c1: ArrayLike, d: int) -> Projection:
    """Slow feature analysis: maximize tr(Vᵀ C1sym V) subject to Vᵀ C0 V = I.

    When C1sym is indefinite (fast, anticorrelated components) the whitened
    eigenvectors are ranked by squared eigenvalue.
    """
    c0 = check_symmetric(c0)
    _check_dimension(d, len(c0))
    c1 = _check_lagged(c0, c1)
    c1_sym = 0.5 * (c1 + c1.T)
    whitener = inv_sqrtm(c0)
    eig = EigenDecomposition.of(whitener @ c1_sym @ whitener, "M_SFA")
    order = np.arange(len(eig.values))
    if np.linalg.eigvalsh(c1_sym)[0] <= 0:
        logger.warning("C1sym is not positive definite; ordering SFA components by squared autocorrelation")
        order = np.argsort(-(eig.values**2), kind="stable")
    return Projection(fix_signs(whitener @ eig.vectors[:, order[:d]]))


def canonical_correlations(c0: ArrayLike, c1: ArrayLike) -> FloatArray:
    """Singular values of C0^{-1/2} C1 C0^{-1/2}, descending."""
    c0 = check_symmetric(c0)
    whitener = inv_sqrtm(c0)
    return np.asarray(
        scipy.linalg.svd(whitener @ _check_lagged(c0, c1) @ whitener, compute_uv=False),
        dtype=np.float64,
    )


def cca(c0: ArrayLike, c1: ArrayLike, d: int) -> tuple[Projection, Projection]:
    """Past and future projections maximizing I(Uᵀx_t ; Vᵀx_{t+1}).

    Returns:
        Tuple of (U, V), with pairs signed so the past column's largest entry is positive
    """
    c0 = check_symmetric(c0)
    _check_dimension(d, len(c0))
    whitener = inv_sqrtm(c0)
    left, _, right_t = scipy.linalg.svd(whitener @ _check_lagged(c0, c1) @ whitener)
    past = whitener @ left[:, :d]
    future = whitener @ right_t[:d].T
    rows = np.argmax(np.abs(past), axis=0)
    signs = np.sign(past[rows, np.arange(d)])
    signs[signs == 0] = 1.0
    return Projection(past * signs), Projection(future * signs)


def order_by_variance(proj: Projection | ArrayLike, c0: ArrayLike) -> Projection:
    """Orthonormal basis of the same subspace, components ordered by variance explained."""
    basis = (proj if isinstance(proj, Projection) else Projection(np.asarray(proj))).orthonormalize()
    c0 = check_symmetric(c0)
    if c0.shape[0] != basis.n:
        raise InvalidArgumentError(f"C0 is {c0.shape[0]}x{c0.shape[0]} but the projection has {basis.n} rows")
    rotation = EigenDecomposition.of(basis.matrix.T @ c0 @ basis.matrix, "projected C0").vectors
    return Projection(fix_signs(basis.matrix @ rotation), is_orthonormal=True)
