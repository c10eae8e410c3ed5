"""DCA fitting: joint L-BFGS optimization with random restarts, and deflation."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence

import numpy as np
import scipy.linalg
from scipy.optimize import minimize

from dyncomp.baselines.linear import pca, sfa
from dyncomp.config.schema import FitOptions
from dyncomp.core.timeseries import FloatArray, Projection
from dyncomp.covariance.crosscov import CrossCovSet, project_crosscov
from dyncomp.covariance.toeplitz import regularize_crosscov
from dyncomp.errors import FitFailureError, InvalidArgumentError, NumericalDegeneracyError
from dyncomp.optim.loss import dca_objective, freq_deflation_objective
from dyncomp.optim.report import FitReport, RestartRecord
from dyncomp.parallel import map_ordered
from dyncomp.predinfo.gaussian import pi_time_domain

logger = logging.getLogger(__name__)

LBFGS_MEMORY = 10
LBFGS_FTOL = 1e-12

Objective = Callable[[FloatArray], tuple[float, FloatArray, float]]


def _check_inputs(covs: CrossCovSet, opts: FitOptions) -> None:
    if opts.d > covs.n:
        raise InvalidArgumentError(f"d={opts.d} exceeds the channel count {covs.n}")
    if covs.two_t < 2 * opts.T:
        raise InvalidArgumentError(
            f"T={opts.T} needs {2 * opts.T} lags but only {covs.two_t} are available"
        )


def _prepare(covs: CrossCovSet, opts: FitOptions) -> CrossCovSet:
    _check_inputs(covs, opts)
    return regularize_crosscov(covs.truncated(2 * opts.T), 2 * opts.T, opts.regularization_floor)


def _baseline_starts(covs: CrossCovSet, d: int) -> list[tuple[str, FloatArray]]:
    """Orthonormal bases of the PCA and SFA subspaces, skipping any that cannot be formed."""
    candidates: list[tuple[str, Callable[[], Projection]]] = [
        ("pca", lambda: pca(covs[0], d)),
        ("sfa", lambda: sfa(covs[0], covs[1], d)),
    ]
    starts = []
    for name, build in candidates:
        try:
            starts.append((name, build().orthonormalize().matrix))
        except (NumericalDegeneracyError, InvalidArgumentError) as e:
            logger.debug("No %s start: %s", name, e)
    return starts


def _failed_record(
    index: int, component: int, seed: int | None, start: str, initial_loss: float, reason: str
) -> RestartRecord:
    return RestartRecord(
        index=index,
        component=component,
        seed=seed,
        initial_loss=initial_loss,
        final_loss=float("nan"),
        penalty_residual=float("nan"),
        grad_norm=float("nan"),
        iterations=0,
        converged=False,
        message=reason,
        start=start,
    )


def _run_restart(
    objective: Objective,
    v0: FloatArray,
    seed: int | None,
    start: str,
    opts: FitOptions,
    index: int,
    component: int,
) -> tuple[RestartRecord, FloatArray | None]:
    n, d = v0.shape
    try:
        initial_loss, _, initial_pi = objective(v0)
    except NumericalDegeneracyError as e:
        logger.warning("Restart %d (%s start) failed at initialization: %s", index, start, e)
        return _failed_record(index, component, seed, start, float("nan"), str(e)), None

    evaluated: dict[bytes, tuple[float, float]] = {}
    loss_trace = [initial_loss]
    pi_trace = [initial_pi]

    def fun(x: FloatArray) -> tuple[float, FloatArray]:
        loss, grad, pi = objective(x.reshape(n, d))
        evaluated[x.tobytes()] = (loss, pi)
        return loss, grad.ravel()

    def callback(xk: FloatArray) -> None:
        entry = evaluated.get(xk.tobytes())
        if entry is not None:
            loss_trace.append(entry[0])
            pi_trace.append(entry[1])

    try:
        result = minimize(
            fun,
            v0.ravel(),
            jac=True,
            method="L-BFGS-B",
            callback=callback,
            options={
                "maxcor": LBFGS_MEMORY,
                "maxiter": opts.max_iter,
                "gtol": opts.grad_tol,
                "ftol": LBFGS_FTOL,
            },
        )
        v = np.asarray(result.x).reshape(n, d)
        final_loss, grad, _ = objective(v)
    except NumericalDegeneracyError as e:
        logger.warning("Restart %d (%s start) failed: %s", index, start, e)
        return _failed_record(index, component, seed, start, initial_loss, str(e)), None

    if not np.isfinite(final_loss):
        return _failed_record(index, component, seed, start, initial_loss, "non-finite loss"), None
    residual = float(np.sum((v.T @ v - np.eye(d)) ** 2))
    grad_norm = float(np.linalg.norm(grad))
    # A line-search stall at a stationary point still counts as converged.
    converged = bool(result.success) or grad_norm <= opts.grad_tol
    record = RestartRecord(
        index=index,
        component=component,
        seed=seed,
        initial_loss=initial_loss,
        final_loss=final_loss,
        penalty_residual=residual,
        grad_norm=grad_norm,
        iterations=int(result.nit),
        converged=converged,
        message=str(result.message),
        loss_trace=loss_trace,
        pi_trace=pi_trace,
        start=start,
    )
    logger.debug(
        "Restart %d: loss %.6g -> %.6g in %d iterations (%s)",
        index,
        initial_loss,
        final_loss,
        record.iterations,
        record.message,
    )
    return record, v


def _optimize(
    objective: Objective,
    n: int,
    d: int,
    opts: FitOptions,
    component: int,
    offset: int = 0,
    starts: Sequence[tuple[str, FloatArray]] = (),
) -> tuple[FloatArray, list[RestartRecord], int]:
    """Run every restart and return (best V, records, index of the best record).

    The ``n_restarts`` random initializations come first, followed by one run
    from each matrix in ``starts``.
    """
    seeds = np.random.SeedSequence(opts.seed, spawn_key=(component,)).generate_state(opts.n_restarts)
    inits: list[tuple[int | None, str, FloatArray]] = []
    for seed in seeds:
        v0, _ = np.linalg.qr(np.random.default_rng(int(seed)).standard_normal((n, d)))
        inits.append((int(seed), "random", v0))
    inits.extend((None, name, v0) for name, v0 in starts)

    def run(i: int) -> tuple[RestartRecord, FloatArray | None]:
        seed, start, v0 = inits[i]
        return _run_restart(objective, v0, seed, start, opts, offset + i, component)

    outcomes = map_ordered(run, range(len(inits)))
    records = [record for record, _ in outcomes]
    finished = [i for i, (_, v) in enumerate(outcomes) if v is not None]
    if not finished:
        raise FitFailureError(
            f"All {len(inits)} restarts failed numerically",
            [record.to_dict() for record in records],
        )
    converged = [i for i in finished if records[i].converged]
    if not converged:
        logger.warning(
            "No restart converged within %d iterations; using the lowest final loss", opts.max_iter
        )
        converged = finished
    best = min(converged, key=lambda i: (records[i].final_loss, i))
    v_best = outcomes[best][1]
    assert v_best is not None
    return v_best, records, offset + best


def _projected_pi(covs: CrossCovSet, projection: Projection, T: int) -> float:
    """Predictive information of the projection on the caller's covariances."""
    return pi_time_domain(project_crosscov(covs, projection), T).value


def _identity_report(covs: CrossCovSet, opts: FitOptions, method: str) -> FitReport:
    projection = Projection(np.eye(covs.n), is_orthonormal=True)
    pi = _projected_pi(covs, projection, opts.T)
    record = RestartRecord(
        index=0,
        component=0,
        seed=opts.seed,
        initial_loss=-pi,
        final_loss=-pi,
        penalty_residual=0.0,
        grad_norm=0.0,
        iterations=0,
        converged=True,
        message="d equals n; identity projection",
        start="identity",
        loss_trace=[-pi],
        pi_trace=[pi],
    )
    return FitReport(
        projection=projection,
        pi_nats=pi,
        method=method,
        T=opts.T,
        restarts=[record],
        chosen_restart=0,
        component_choices=[0],
    )


def fit_dca(covs: CrossCovSet, opts: FitOptions) -> FitReport:
    """Fit a d-dimensional subspace maximizing the predictive information of length-T windows.

    Σ_2T is regularized once up front, then every restart minimizes
    -I_T(Vᵀx) + λ‖VᵀV - I‖² with L-BFGS. There are ``n_restarts`` random
    orthonormal starts and, with ``baseline_starts``, one each from the PCA
    and SFA subspaces. The best converged restart (lowest loss, lowest index
    on ties) is orthonormalized by QR.

    Args:
        covs: Cross-covariances with at least 2T lags
        opts: Optimizer options

    Returns:
        FitReport whose pi_nats is the predictive information of the returned basis

    Raises:
        FitFailureError: If every restart failed numerically
    """
    prepared = _prepare(covs, opts)
    if opts.d == covs.n:
        return _identity_report(covs, opts, "dca")

    def objective(v: FloatArray) -> tuple[float, FloatArray, float]:
        return dca_objective(prepared, v, opts.T, opts.penalty_lambda)

    starts = _baseline_starts(prepared, opts.d) if opts.baseline_starts else []
    v_best, records, chosen = _optimize(objective, covs.n, opts.d, opts, component=0, starts=starts)
    projection = Projection.orthonormalized(v_best)
    pi = _projected_pi(covs, projection, opts.T)
    logger.info("DCA fit: d=%d, T=%d, I=%.6g nats (restart %d)", opts.d, opts.T, pi, chosen)
    return FitReport(
        projection=projection,
        pi_nats=pi,
        method="dca",
        T=opts.T,
        restarts=records,
        chosen_restart=chosen,
        component_choices=[chosen],
    )


def fit_dca_deflation(covs: CrossCovSet, opts: FitOptions) -> FitReport:
    """Greedy DCA: fit one direction at a time and project it out.

    ``opts.method == "deflation_freq_domain"`` uses the cepstral objective
    on each direction's autocovariance; any other value uses the
    time-domain objective.
    """
    prepared = _prepare(covs, opts)
    freq = opts.method == "deflation_freq_domain"
    method = "dca-fft-deflate" if freq else "dca-deflate"

    basis = np.eye(prepared.n)
    current = prepared
    directions: list[FloatArray] = []
    records: list[RestartRecord] = []
    choices: list[int] = []
    for component in range(opts.d):
        remaining = basis.shape[1]
        if remaining == 1:
            u = np.ones((1, 1))
        else:
            deflated = current

            def objective(v: FloatArray, covs: CrossCovSet = deflated) -> tuple[float, FloatArray, float]:
                if freq:
                    return freq_deflation_objective(covs, v, opts.T, opts.penalty_lambda, opts.window_fn)
                return dca_objective(covs, v, opts.T, opts.penalty_lambda)

            v_best, component_records, chosen = _optimize(
                objective, remaining, 1, opts, component=component, offset=len(records)
            )
            records.extend(component_records)
            choices.append(chosen)
            u = v_best / np.linalg.norm(v_best)
        directions.append(basis @ u)
        if component + 1 < opts.d:
            complement = scipy.linalg.null_space(u.T)
            current = project_crosscov(current, complement)
            basis = basis @ complement

    projection = Projection.orthonormalized(np.hstack(directions))
    pi = _projected_pi(covs, projection, opts.T)
    logger.info("Deflation fit (%s): d=%d, T=%d, I=%.6g nats", method, opts.d, opts.T, pi)
    return FitReport(
        projection=projection,
        pi_nats=pi,
        method=method,
        T=opts.T,
        restarts=records,
        chosen_restart=choices[0] if choices else -1,
        component_choices=choices,
    )
