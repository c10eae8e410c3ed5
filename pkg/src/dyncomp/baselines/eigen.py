"""Symmetric eigendecompositions, sign conventions and whitening."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from dyncomp.core.timeseries import ORTHONORMAL_TOL, FloatArray
from dyncomp.errors import InvalidArgumentError, WhiteningError

SYMMETRY_TOL = 1e-8
EIGEN_FLOOR = 1e-12


def check_symmetric(matrix: ArrayLike, name: str = "C0") -> FloatArray:
    """Square symmetric matrix (within 1e-8) as a float array."""
    array = np.asarray(matrix, dtype=np.float64)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise InvalidArgumentError(f"{name} must be a square matrix, got shape {array.shape}")
    if np.max(np.abs(array - array.T)) > SYMMETRY_TOL:
        raise InvalidArgumentError(f"{name} is not symmetric")
    return 0.5 * (array + array.T)


def fix_signs(vectors: FloatArray) -> FloatArray:
    """Flip columns so each one's largest-magnitude entry is positive."""
    rows = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[rows, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a symmetric matrix.

    Attributes:
        values: Eigenvalues, descending
        vectors: Column-orthonormal eigenvectors, same order
    """

    values: FloatArray
    vectors: FloatArray

    def __post_init__(self) -> None:
        if np.any(np.diff(self.values) > 0):
            raise InvalidArgumentError("Eigenvalues must be sorted in descending order")
        k = self.vectors.shape[1]
        if np.max(np.abs(self.vectors.T @ self.vectors - np.eye(k))) > ORTHONORMAL_TOL:
            raise InvalidArgumentError("Eigenvectors are not orthonormal")

    @classmethod
    def of(cls, matrix: ArrayLike, name: str = "matrix") -> EigenDecomposition:
        """Decompose a symmetric matrix, descending, with the sign convention applied."""
        values, vectors = scipy.linalg.eigh(check_symmetric(matrix, name))
        return cls(values=values[::-1].copy(), vectors=fix_signs(vectors[:, ::-1]))

    def top(self, d: int) -> FloatArray:
        """First d eigenvectors."""
        return self.vectors[:, :d]


def inv_sqrtm(c0: ArrayLike) -> FloatArray:
    """C0^{-1/2} through the eigendecomposition.

    Raises:
        WhiteningError: If C0 is singular relative to its largest eigenvalue
    """
    values, vectors = scipy.linalg.eigh(check_symmetric(c0))
    top = max(float(values[-1]), 0.0)
    if values[0] <= EIGEN_FLOOR * top or top == 0.0:
        condition = float("inf") if values[0] <= 0 else top / float(values[0])
        raise WhiteningError(
            "C0 is singular and cannot be whitened; regularize it first (regularize_psd)",
            condition,
        )
    scale = 1.0 / np.sqrt(np.maximum(values, EIGEN_FLOOR))
    return np.asarray((vectors * scale) @ vectors.T, dtype=np.float64)
