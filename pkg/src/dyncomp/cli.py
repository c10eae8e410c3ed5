"""Command-line interface for dyncomp."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, get_args

import pandas as pd

from dyncomp import __version__
from dyncomp.config.loader import RESOLVED_CONFIG_NAME, load_config
from dyncomp.config.schema import NoiseSpec, PIMethodName, PISection, RunConfig
from dyncomp.core.io import (
    FLOAT_FORMAT,
    read_projection_csv,
    read_series_csv,
    write_json,
    write_projection_csv,
    write_series_csv,
)
from dyncomp.core.transforms import mean_center, project_series
from dyncomp.covariance.crosscov import estimate_crosscov
from dyncomp.covariance.io import load_crosscov
from dyncomp.errors import DynCompError, FitFailureError, InvalidArgumentError
from dyncomp.evaluation.regression import lagged_regression_eval
from dyncomp.evaluation.sweep import snr_sweep, summarize_sweep
from dyncomp.methods import methods
from dyncomp.predinfo.analytic import pi_analytic_exponential, pi_analytic_squared_exponential
from dyncomp.predinfo.estimate import PIEstimate
from dyncomp.predinfo.gaussian import pi_time_domain
from dyncomp.predinfo.knn import mi_knn, pi_knn
from dyncomp.predinfo.spectral import pi_freq_domain
from dyncomp.synth.embedding import embed_noisy, embedding_seeds
from dyncomp.synth.gp import gp_generate
from dyncomp.synth.lorenz import lorenz_generate

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ["method", "d", "T", "lag", "fold", "r2", "train_r2"]

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]

ANALYTIC_PI: dict[str, Callable[[float], PIEstimate]] = {
    "analytic-exponential": pi_analytic_exponential,
    "analytic-squared-exponential": pi_analytic_squared_exponential,
}


def _option(parser: argparse.ArgumentParser, *flags: str, dest: str, **kwargs: Any) -> None:
    """Add a flag that only appears in the namespace when given."""
    parser.add_argument(*flags, dest=dest, default=argparse.SUPPRESS, **kwargs)


def _add_synth(subparsers: Any) -> None:
    parser = subparsers.add_parser("synth", help="Generate synthetic data")
    parser.add_argument(
        "synth.generator",
        nargs="?",
        default=argparse.SUPPRESS,
        metavar="GENERATOR",
        help="lorenz, lorenz-embed or gp",
    )
    _option(parser, "--steps", dest="synth.n_steps", type=int, metavar="N", help="Number of samples")
    _option(parser, "--dim", dest="synth.ambient_dim", type=int, metavar="N", help="Embedding dimension")
    _option(parser, "--snr", dest="synth.snr", type=float, help="Signal-to-noise ratio (inf for none)")
    _option(parser, "--d-noise", dest="synth.d_noise", type=float, help="Effective noise dimensionality")
    _option(parser, "--kernel", dest="synth.kernel.name", choices=["exponential", "squared_exponential"])
    _option(parser, "--tau", dest="synth.kernel.tau", type=float, help="Kernel time constant in steps")
    _option(parser, "--dt", dest="synth.lorenz.dt", type=float, help="Lorenz integration step")
    _option(parser, "--downsample", dest="synth.lorenz.downsample", type=int)
    _option(parser, "--sigma", dest="synth.lorenz.sigma", type=float)
    _option(parser, "--rho", dest="synth.lorenz.rho", type=float)
    _option(parser, "--beta", dest="synth.lorenz.beta", type=float)


def _add_fit(subparsers: Any) -> None:
    parser = subparsers.add_parser("fit", help="Fit a projection to a series CSV")
    parser.add_argument("fit.input", nargs="?", default=argparse.SUPPRESS, metavar="INPUT")
    _option(parser, "--method", "-m", dest="fit.method", metavar="NAME",
            help=f"One of {', '.join(methods.list_methods())} (abbreviations allowed)")
    _option(parser, "-d", dest="fit.d", type=int, help="Target dimensionality")
    _option(parser, "-T", dest="fit.T", type=int, help="Window length")
    _option(parser, "--restarts", dest="fit.n_restarts", type=int)
    _option(parser, "--no-baseline-starts", dest="fit.baseline_starts", action="store_false",
            help="Only use random initializations")
    _option(parser, "--lambda", dest="fit.penalty_lambda", type=float, help="Orthonormality penalty weight")
    _option(parser, "--max-iter", dest="fit.max_iter", type=int)
    _option(parser, "--grad-tol", dest="fit.grad_tol", type=float)
    _option(parser, "--window", dest="fit.window_fn", choices=["hann", "none"])
    _option(parser, "--lag", dest="fit.lag", type=int, help="Lag for SFA and CCA")
    _option(parser, "--chunk", dest="fit.chunk", type=int, help="Segment length of trial data")


def _add_transform(subparsers: Any) -> None:
    parser = subparsers.add_parser("transform", help="Project a series CSV")
    parser.add_argument("transform.input", nargs="?", default=argparse.SUPPRESS, metavar="INPUT")
    parser.add_argument("transform.projection", nargs="?", default=argparse.SUPPRESS, metavar="PROJECTION")


def _add_pi(subparsers: Any) -> None:
    parser = subparsers.add_parser("pi", help="Estimate predictive information")
    parser.add_argument("pi.input", nargs="?", default=argparse.SUPPRESS, metavar="INPUT",
                        help="Series CSV or cross-covariance directory")
    _option(parser, "--method", "-m", dest="pi.method", choices=list(get_args(PIMethodName)))
    _option(parser, "-T", dest="pi.T", type=int, help="Window length")
    _option(parser, "--window", dest="pi.window_fn", choices=["hann", "none"])
    _option(parser, "-k", dest="pi.k", type=int, help="Neighbor count for knn")
    _option(parser, "--chunk", dest="pi.chunk", type=int)
    _option(parser, "--other", dest="pi.other", metavar="CSV", help="Second series for knn-mi")
    _option(parser, "--tau", dest="pi.tau", type=float, help="Kernel time constant for the analytic methods")


def _add_eval(subparsers: Any) -> None:
    parser = subparsers.add_parser("eval", help="Cross-validated lagged regression")
    parser.add_argument("eval.features", nargs="?", default=argparse.SUPPRESS, metavar="FEATURES")
    parser.add_argument("eval.targets", nargs="?", default=argparse.SUPPRESS, metavar="TARGETS")
    _option(parser, "--folds", dest="eval.n_folds", type=int)
    _option(parser, "--history", dest="eval.history_bins", type=int)
    _option(parser, "--lags", dest="eval.lags", type=int, nargs="+")
    _option(parser, "--ridge", dest="eval.ridge_alpha", type=float)
    _option(parser, "--target", dest="eval.target", choices=["auxiliary", "self_forecast"])
    _option(parser, "--label", dest="eval.label", help="Method column of the results table")
    _option(parser, "-T", dest="eval.T", type=int, help="Window length column of the results table")
    _option(parser, "--segment-length", dest="eval.segment_length", type=int)


def _add_sweep(subparsers: Any) -> None:
    parser = subparsers.add_parser("sweep", help="Reconstruction R² versus SNR on noisy Lorenz data")
    _option(parser, "--snr", dest="sweep.snr_values", type=float, nargs="+")
    _option(parser, "--methods", dest="sweep.methods", nargs="+")
    _option(parser, "--seeds", dest="sweep.seeds", type=int, nargs="+")
    _option(parser, "--steps", dest="sweep.n_steps", type=int)
    _option(parser, "--dim", dest="sweep.ambient_dim", type=int)
    _option(parser, "-d", dest="sweep.d", type=int)
    _option(parser, "-T", dest="sweep.T", type=int)
    _option(parser, "--restarts", dest="sweep.n_restarts", type=int)
    _option(parser, "--max-iter", dest="sweep.max_iter", type=int)
    _option(parser, "--d-noise", dest="sweep.d_noise", type=float)


def parse_args(args: list[str] | None = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        args: Arguments to parse (defaults to sys.argv[1:])

    Returns:
        Parsed arguments
    """
    parser = argparse.ArgumentParser(
        prog="dyncomp",
        description="Find linear subspaces of time series with maximal predictive information",
        epilog="Example: dyncomp --out-dir run synth lorenz-embed --snr 1 --dim 30",
    )
    _option(parser, "--seed", dest="seed", type=int, help="Global random seed")
    _option(parser, "--out-dir", "-o", dest="out_dir", metavar="DIR", help="Output directory")
    parser.add_argument(
        "--config",
        "-c",
        type=Path,
        metavar="FILE",
        help="YAML or JSON config; its values override flags",
    )
    parser.add_argument(
        "--log-level",
        choices=LOG_LEVELS,
        default="WARNING",
        help="Logging threshold (default: WARNING)",
    )
    parser.add_argument(
        "--version",
        "-V",
        action="version",
        version=f"%(prog)s {__version__}",
    )

    # A --config file may name the command instead.
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    _add_synth(subparsers)
    _add_fit(subparsers)
    _add_transform(subparsers)
    _add_pi(subparsers)
    _add_eval(subparsers)
    _add_sweep(subparsers)

    return parser.parse_args(args)


def collect_overrides(parsed: argparse.Namespace) -> dict[str, Any]:
    """Nest dotted flag destinations ('fit.d') into config sections."""
    result: dict[str, Any] = {}
    for key, value in vars(parsed).items():
        if key in ("config", "log_level") or value is None:
            continue
        node = result
        *sections, leaf = key.split(".")
        for section in sections:
            node = node.setdefault(section, {})
        node[leaf] = value
    return result


def _require(value: str | None, what: str) -> Path:
    if value is None:
        raise InvalidArgumentError(f"No {what} given")
    return Path(value)


def cmd_synth(config: RunConfig, out: Path) -> list[Path]:
    """Write a synthetic series and its parameter sidecar."""
    s = config.synth
    written: list[Path] = []
    sidecar: dict[str, Any] = {"generator": s.generator, "n_steps": s.n_steps, "seed": config.seed}
    if s.generator == "gp":
        series = gp_generate(s.kernel, s.n_steps, config.seed)
        sidecar["kernel"] = s.kernel.model_dump()
    else:
        series = lorenz_generate(s.lorenz, s.n_steps, config.seed)
        sidecar["lorenz"] = s.lorenz.model_dump()
    if s.generator == "lorenz-embed":
        embed_seed, noise_seed = embedding_seeds(config.seed)
        latent = series
        series, embedding = embed_noisy(
            latent, s.ambient_dim, NoiseSpec(d_noise=s.d_noise, seed=noise_seed), s.snr, embed_seed
        )
        written.append(write_series_csv(latent, out / "latent.csv"))
        written.append(write_projection_csv(embedding, out / "embedding.csv"))
        sidecar.update(
            ambient_dim=s.ambient_dim,
            snr=s.snr,
            d_noise=s.d_noise,
            embedding_seed=embed_seed,
            noise_seed=noise_seed,
            embedding="embedding.csv",
            latent="latent.csv",
        )
    sidecar["dt"] = series.dt
    written.insert(0, write_series_csv(series, out / "series.csv"))
    written.append(write_json(sidecar, out / "series.json"))
    return written


def cmd_fit(config: RunConfig, out: Path) -> list[Path]:
    """Fit a projection; the report is written even when the fit fails."""
    f = config.fit
    series = mean_center(read_series_csv(_require(f.input, "input CSV")))
    method = methods.resolve(f.method)
    opts = f.to_fit_options(config.seed)
    if not method.uses_window:
        logger.warning(
            "Method '%s' does not use T; T=%d only sets the reported information", method.name, f.T
        )
    covs = estimate_crosscov(series, method.required_lags(opts, f.lag), f.chunk)
    try:
        report = methods.fit(method.name, covs, opts, lag=f.lag)
    except FitFailureError as e:
        write_json({"method": method.name, "error": str(e), "restarts": e.restarts}, out / "report.json")
        raise
    written = [write_projection_csv(report.projection, out / "projection.csv")]
    if report.future_projection is not None:
        written.append(write_projection_csv(report.future_projection, out / "projection_future.csv"))
    written.append(write_json(report.to_dict(), out / "report.json"))
    return written


def cmd_transform(config: RunConfig, out: Path) -> list[Path]:
    """Project a series through a stored projection."""
    t = config.transform
    series = read_series_csv(_require(t.input, "input CSV"))
    projection = read_projection_csv(_require(t.projection, "projection CSV"))
    return [write_series_csv(project_series(series, projection), out / "projected.csv")]


def _pi_from_covariances(p: PISection, directory: Path) -> PIEstimate:
    covs = load_crosscov(directory)
    if p.method == "time-domain":
        return pi_time_domain(covs, p.T)
    if p.method == "freq-domain":
        if covs.n != 1:
            raise InvalidArgumentError(f"freq-domain needs single-channel covariances, got {covs.n} channels")
        return pi_freq_domain(None, p.T, p.window_fn, autocov=covs.lags[:, 0, 0])
    raise InvalidArgumentError(f"Method '{p.method}' needs a series CSV, not covariances")


def _pi_from_series(p: PISection, path: Path) -> PIEstimate:
    series = mean_center(read_series_csv(path))
    if p.method == "time-domain":
        return pi_time_domain(estimate_crosscov(series, 2 * p.T, p.chunk), p.T)
    if p.method == "freq-domain":
        if series.n_channels != 1:
            raise InvalidArgumentError(
                f"freq-domain needs a single-channel series, got {series.n_channels} channels"
            )
        return pi_freq_domain(series, p.T, p.window_fn)
    if p.method == "knn-mi":
        other = read_series_csv(_require(p.other, "second series (--other)"))
        return mi_knn(series.data, other.data, p.k)
    return pi_knn(series, p.T, p.k)


def cmd_pi(config: RunConfig, out: Path) -> list[Path]:
    """Estimate predictive information from a series, stored covariances or a kernel."""
    p = config.pi
    estimate: PIEstimate
    if p.method in ANALYTIC_PI:
        if p.tau is None:
            raise InvalidArgumentError(f"Method '{p.method}' needs --tau")
        estimate = ANALYTIC_PI[p.method](p.tau)
    else:
        source = _require(p.input, "input")
        estimate = _pi_from_covariances(p, source) if source.is_dir() else _pi_from_series(p, source)
    return [write_json(estimate.to_dict(), out / "estimate.json")]


def cmd_eval(config: RunConfig, out: Path) -> list[Path]:
    """Per-fold R² table and JSON summary for every requested lag."""
    e = config.eval
    features = read_series_csv(_require(e.features, "features CSV"))
    targets = read_series_csv(_require(e.targets, "targets CSV"))
    rows = []
    summary_lags = []
    for lag in e.lags:
        result = lagged_regression_eval(features, targets, e.to_eval_spec(lag))
        for fold in result.folds:
            rows.append([e.label, features.n_channels, e.T, lag, fold.fold, fold.r2, fold.train_r2])
        summary_lags.append({"lag": lag, "mean_r2": result.mean_r2, "per_fold": result.per_fold})
    table = pd.DataFrame(rows, columns=RESULT_COLUMNS)
    results_path = out / "results.csv"
    table.to_csv(results_path, index=False, float_format=FLOAT_FORMAT)
    summary = {
        "method": e.label,
        "d": features.n_channels,
        "T": e.T,
        "n_folds": e.n_folds,
        "history_bins": e.history_bins,
        "ridge_alpha": e.ridge_alpha,
        "lags": summary_lags,
    }
    return [results_path, write_json(summary, out / "summary.json")]


def cmd_sweep(config: RunConfig, out: Path) -> list[Path]:
    """Run the SNR sweep and write the table plus a per-cell summary."""
    s = config.sweep
    table = snr_sweep(s.snr_values, s.methods, s)
    table_path = out / "sweep.csv"
    table.to_csv(table_path, index=False, float_format=FLOAT_FORMAT)
    summary = summarize_sweep(table).to_dict(orient="records")
    return [table_path, write_json({"summary": summary, "failed_cells": int((table["error"] != "").sum())},
                                   out / "summary.json")]


COMMANDS: dict[str, Callable[[RunConfig, Path], list[Path]]] = {
    "synth": cmd_synth,
    "fit": cmd_fit,
    "transform": cmd_transform,
    "pi": cmd_pi,
    "eval": cmd_eval,
    "sweep": cmd_sweep,
}


def main(args: list[str] | None = None) -> int:
    """Main entry point.

    Args:
        args: Command-line arguments

    Returns:
        Exit code
    """
    parsed = parse_args(args)
    logging.basicConfig(
        level=parsed.log_level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    # Load configuration
    try:
        config = load_config(config_path=parsed.config, overrides=collect_overrides(parsed))
        command = parsed.command or config.command
        if command is None or command not in COMMANDS:
            raise InvalidArgumentError(
                f"No command given; pass one of {', '.join(COMMANDS)} or a config with a 'command' key"
            )
        config = config.model_copy(update={"command": command})
    except (DynCompError, ValueError, OSError) as e:
        print(f"Error loading configuration: {e}", file=sys.stderr)
        return 1

    try:
        out = Path(config.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_json(config.model_dump(mode="json", exclude={"out_dir"}), out / RESOLVED_CONFIG_NAME)
        for path in COMMANDS[command](config, out):
            logger.info("Wrote %s", path)
        return 0

    except KeyboardInterrupt:
        return 130
    except (DynCompError, ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
