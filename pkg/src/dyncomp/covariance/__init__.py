"""Cross-covariance estimation and block-Toeplitz spatiotemporal covariances."""

from dyncomp.covariance.crosscov import CrossCovSet, estimate_crosscov, project_crosscov
from dyncomp.covariance.io import load_crosscov, save_crosscov
from dyncomp.covariance.toeplitz import (
    BlockToeplitzCov,
    assemble_block_toeplitz,
    block_toeplitz,
    regularize_crosscov,
    regularize_psd,
)

__all__ = [
    "BlockToeplitzCov",
    "CrossCovSet",
    "assemble_block_toeplitz",
    "block_toeplitz",
    "estimate_crosscov",
    "load_crosscov",
    "project_crosscov",
    "regularize_crosscov",
    "regularize_psd",
    "save_crosscov",
]
