"""Leverage scores: how strongly a subspace aligns with each measurement axis."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike
from scipy.stats import spearmanr

from dyncomp.core.timeseries import FloatArray, Projection, as_matrix
from dyncomp.errors import InvalidArgumentError

# Looser than Projection's flag check: bases read back from CSV are accepted.
LEVERAGE_ORTHONORMAL_TOL = 1e-8


def leverage_scores(V: Projection | ArrayLike) -> FloatArray:
    """π_j = (1/d) Σ_i V_ji² for an orthonormal basis V; the scores sum to 1."""
    matrix = as_matrix(V)
    d = matrix.shape[1]
    if np.max(np.abs(matrix.T @ matrix - np.eye(d))) > LEVERAGE_ORTHONORMAL_TOL:
        raise InvalidArgumentError("Leverage scores need an orthonormal basis; orthonormalize first")
    return np.sum(matrix**2, axis=1) / d


def compare_leverage(V1: Projection | ArrayLike, V2: Projection | ArrayLike) -> float:
    """Spearman rank correlation between the leverage scores of two subspaces."""
    first = leverage_scores(V1)
    second = leverage_scores(V2)
    if first.shape != second.shape:
        raise InvalidArgumentError("Subspaces live in spaces of different dimension")
    return float(spearmanr(first, second).statistic)
