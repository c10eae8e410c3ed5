"""Scoring recovered latents against ground truth up to an affine map."""

from __future__ import annotations

import logging

import numpy as np
from sklearn.linear_model import LinearRegression

from dyncomp.core.timeseries import TimeSeries
from dyncomp.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


def reconstruction_r2(latent_true: TimeSeries, latent_est: TimeSeries) -> float:
    """In-sample R² of the least-squares affine map from the estimate to the truth."""
    if latent_true.n_steps != latent_est.n_steps:
        raise InvalidArgumentError(
            f"latent_true has {latent_true.n_steps} steps but latent_est has {latent_est.n_steps}"
        )
    estimate = latent_est.data
    truth = latent_true.data
    if np.all(np.var(estimate, axis=0) == 0):
        logger.warning("Estimated latent has zero variance; reporting R² = 0")
        return 0.0
    predicted = LinearRegression().fit(estimate, truth).predict(estimate)
    sst = float(np.sum((truth - truth.mean(axis=0)) ** 2))
    if sst == 0.0:
        logger.warning("True latent has zero variance; reporting R² = 0")
        return 0.0
    return 1.0 - float(np.sum((truth - predicted) ** 2)) / sst
