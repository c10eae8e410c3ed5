"""Evaluation harness: lagged decoding, reconstruction scoring and sweeps."""

from dyncomp.config.schema import EvalSpec, SweepConfig
from dyncomp.evaluation.reconstruction import reconstruction_r2
from dyncomp.evaluation.regression import (
    FoldResult,
    LinearFit,
    RegressionResult,
    fit_lagged_regression,
    lagged_regression_eval,
    usable_samples,
)
from dyncomp.evaluation.survey import SurveyResult, gaussian_knn_survey
from dyncomp.evaluation.sweep import SWEEP_COLUMNS, snr_sweep, summarize_sweep

__all__ = [
    "SWEEP_COLUMNS",
    "EvalSpec",
    "FoldResult",
    "LinearFit",
    "RegressionResult",
    "SurveyResult",
    "SweepConfig",
    "fit_lagged_regression",
    "gaussian_knn_survey",
    "lagged_regression_eval",
    "reconstruction_r2",
    "snr_sweep",
    "summarize_sweep",
    "usable_samples",
]
