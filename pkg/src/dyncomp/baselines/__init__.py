"""Reference linear methods and subspace diagnostics."""

from dyncomp.baselines.eigen import EigenDecomposition, fix_signs, inv_sqrtm
from dyncomp.baselines.leverage import compare_leverage, leverage_scores
from dyncomp.baselines.linear import canonical_correlations, cca, order_by_variance, pca, sfa

__all__ = [
    "EigenDecomposition",
    "canonical_correlations",
    "cca",
    "compare_leverage",
    "fix_signs",
    "inv_sqrtm",
    "leverage_scores",
    "order_by_variance",
    "pca",
    "sfa",
]
