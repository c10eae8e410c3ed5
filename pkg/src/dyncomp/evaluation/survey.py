"""Gaussian versus nearest-neighbor predictive information over random projections."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import pearsonr

from dyncomp.core.timeseries import FloatArray, Projection, TimeSeries
from dyncomp.core.transforms import mean_center, project_series
from dyncomp.covariance.crosscov import estimate_crosscov
from dyncomp.errors import InvalidArgumentError
from dyncomp.parallel import map_ordered
from dyncomp.predinfo.gaussian import pi_time_domain
from dyncomp.predinfo.knn import pi_knn


@dataclass(frozen=True)
class SurveyResult:
    """Paired estimates, one entry per random projection.

    Attributes:
        gaussian: Time-domain Gaussian estimates in nats
        knn: Nearest-neighbor estimates in nats
        pearson_r: Correlation between the two
    """

    gaussian: FloatArray
    knn: FloatArray
    pearson_r: float


def gaussian_knn_survey(
    series: TimeSeries, n_projections: int, d: int = 1, T: int = 1, k: int = 3, seed: int = 0
) -> SurveyResult:
    """Compare both estimators on ``n_projections`` random orthonormal d-dim projections."""
    if n_projections < 2:
        raise InvalidArgumentError(f"Need at least 2 projections to correlate, got {n_projections}")
    if not 1 <= d <= series.n_channels:
        raise InvalidArgumentError(f"d must lie in [1, {series.n_channels}], got {d}")
    rng = np.random.default_rng(seed)
    projections = [
        Projection.orthonormalized(rng.standard_normal((series.n_channels, d)))
        for _ in range(n_projections)
    ]

    def estimate(projection: Projection) -> tuple[float, float]:
        projected = mean_center(project_series(series, projection))
        gaussian = pi_time_domain(estimate_crosscov(projected, 2 * T), T).value
        return gaussian, pi_knn(projected, T, k).value

    pairs = np.asarray(map_ordered(estimate, projections))
    r = pearsonr(pairs[:, 0], pairs[:, 1]).statistic
    return SurveyResult(gaussian=pairs[:, 0], knn=pairs[:, 1], pearson_r=float(r))
