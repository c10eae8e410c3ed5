"""Cross-validated lagged linear regression with contiguous time-block folds."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from sklearn.linear_model import LinearRegression, Ridge

from dyncomp.config.schema import EvalSpec
from dyncomp.core.timeseries import FloatArray, TimeSeries
from dyncomp.errors import InsufficientDataError, InvalidArgumentError, SingularDesignError

logger = logging.getLogger(__name__)

SAMPLES_PER_PARAMETER = 10


@dataclass(frozen=True)
class FoldResult:
    """Scores of one held-out fold.

    Attributes:
        fold: Fold index in time order
        r2: Held-out R², SST taken about the training mean
        train_r2: R² on the training folds
        n_train: Training samples
        n_test: Held-out samples
    """

    fold: int
    r2: float
    train_r2: float
    n_train: int
    n_test: int


@dataclass(frozen=True)
class RegressionResult:
    """Per-fold and mean R² of one feature/target/lag combination."""

    spec: EvalSpec
    folds: list[FoldResult] = field(default_factory=list)

    @property
    def per_fold(self) -> list[float]:
        """Held-out R² per fold."""
        return [fold.r2 for fold in self.folds]

    @property
    def mean_r2(self) -> float:
        """Mean held-out R² across folds."""
        return float(np.mean(self.per_fold))


@dataclass(frozen=True)
class LinearFit:
    """Coefficients of a lagged linear map.

    Attributes:
        coefficients: (history · p) × q weights; rows ordered oldest step first
        intercept: Length-q offsets
    """

    coefficients: FloatArray
    intercept: FloatArray


def usable_samples(n_steps: int, spec: EvalSpec) -> tuple[np.ndarray, np.ndarray]:
    """Sample times t whose window [t-history+1, t+lag] stays inside one fold and segment.

    Returns:
        Tuple of (times, fold index of each time)
    """
    if n_steps < spec.n_folds:
        raise InsufficientDataError(f"{n_steps} samples cannot form {spec.n_folds} folds")
    fold_of = np.empty(n_steps, dtype=np.int64)
    for index, block in enumerate(np.array_split(np.arange(n_steps), spec.n_folds)):
        fold_of[block] = index
    segment_of = (
        np.zeros(n_steps, dtype=np.int64)
        if spec.segment_length is None
        else np.arange(n_steps) // spec.segment_length
    )
    times = np.arange(spec.history_bins - 1, n_steps - spec.lag_bins)
    first = times - spec.history_bins + 1
    last = times + spec.lag_bins
    keep = (fold_of[first] == fold_of[last]) & (segment_of[first] == segment_of[last])
    return times[keep], fold_of[times[keep]]


def _check_pair(features: TimeSeries, targets: TimeSeries, spec: EvalSpec) -> None:
    if features.n_steps != targets.n_steps:
        raise InvalidArgumentError(
            f"features have {features.n_steps} steps but targets have {targets.n_steps}"
        )
    if spec.target == "self_forecast" and spec.lag_bins < 1:
        raise InvalidArgumentError("self_forecast needs lag_bins >= 1")


def _design(features: FloatArray, times: np.ndarray, history: int) -> FloatArray:
    windows = sliding_window_view(features, history, axis=0)  # (steps, p, history)
    stacked = np.transpose(windows[times - history + 1], (0, 2, 1))
    return np.asarray(stacked.reshape(len(times), -1), dtype=np.float64)


def _model(spec: EvalSpec) -> LinearRegression | Ridge:
    if spec.ridge_alpha > 0:
        return Ridge(alpha=spec.ridge_alpha)
    return LinearRegression()


def _check_rank(design: FloatArray, spec: EvalSpec) -> None:
    if spec.ridge_alpha > 0:
        return
    centered = design - design.mean(axis=0)
    if np.linalg.matrix_rank(centered) < design.shape[1]:
        raise SingularDesignError(
            "Regression design matrix is rank deficient; set ridge_alpha > 0",
            float(np.linalg.cond(centered)),
        )


def _r2(truth: FloatArray, predicted: FloatArray, reference_mean: FloatArray) -> float:
    sst = float(np.sum((truth - reference_mean) ** 2))
    sse = float(np.sum((truth - predicted) ** 2))
    if sst == 0.0:
        return 0.0
    return 1.0 - sse / sst


def fit_lagged_regression(features: TimeSeries, targets: TimeSeries, spec: EvalSpec) -> LinearFit:
    """Fit the lagged map on every usable sample, ignoring fold structure."""
    _check_pair(features, targets, spec)
    single = spec.model_copy(update={"n_folds": 1})
    times, _ = usable_samples(features.n_steps, single)
    if len(times) == 0:
        raise InsufficientDataError("No samples fit the history and lag windows")
    design = _design(features.data, times, spec.history_bins)
    _check_rank(design, spec)
    model = _model(spec).fit(design, targets.data[times + spec.lag_bins])
    return LinearFit(
        coefficients=np.asarray(model.coef_, dtype=np.float64).T.copy(),
        intercept=np.atleast_1d(np.asarray(model.intercept_, dtype=np.float64)),
    )


def lagged_regression_eval(features: TimeSeries, targets: TimeSeries, spec: EvalSpec) -> RegressionResult:
    """Predict targets[t + lag] from features[t - history + 1 .. t] with k-fold CV.

    Each fold in turn is held out; the model is fitted on the others. R² is
    pooled over target channels: 1 - total SSE / total SST.

    Raises:
        SingularDesignError: If a training design is rank deficient and ridge_alpha is 0
    """
    _check_pair(features, targets, spec)
    times, folds = usable_samples(features.n_steps, spec)
    design = _design(features.data, times, spec.history_bins)
    response = targets.data[times + spec.lag_bins]

    parameters = design.shape[1] + 1
    per_fold = np.bincount(folds, minlength=spec.n_folds)
    if per_fold.min() < SAMPLES_PER_PARAMETER * parameters:
        logger.warning(
            "Only %d samples in the smallest fold for %d parameters per target; R² may be unreliable",
            per_fold.min(),
            parameters,
        )

    results = []
    for fold in range(spec.n_folds):
        test = folds == fold
        train = ~test
        if not test.any() or not train.any():
            raise InsufficientDataError(f"Fold {fold} has no usable train or test samples")
        _check_rank(design[train], spec)
        model = _model(spec).fit(design[train], response[train])
        train_mean = response[train].mean(axis=0)
        results.append(
            FoldResult(
                fold=fold,
                r2=_r2(response[test], model.predict(design[test]).reshape(response[test].shape), train_mean),
                train_r2=_r2(
                    response[train], model.predict(design[train]).reshape(response[train].shape), train_mean
                ),
                n_train=int(train.sum()),
                n_test=int(test.sum()),
            )
        )
    return RegressionResult(spec=spec, folds=results)
