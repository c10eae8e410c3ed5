"""Reconstruction quality versus SNR on noisy Lorenz embeddings."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Any

import numpy as np
import pandas as pd

from dyncomp.config.schema import FitOptions, NoiseSpec, SweepConfig
from dyncomp.core.transforms import mean_center, project_series
from dyncomp.covariance.crosscov import estimate_crosscov
from dyncomp.errors import DynCompError, InvalidArgumentError
from dyncomp.evaluation.reconstruction import reconstruction_r2
from dyncomp.methods import methods as registry
from dyncomp.parallel import map_ordered
from dyncomp.synth.embedding import embed_noisy, embedding_seeds
from dyncomp.synth.lorenz import lorenz_generate

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["seed", "snr", "method", "d", "T", "r2", "pi_nats", "error"]


def snr_sweep(snr_values: Sequence[float], methods: Sequence[str], config: SweepConfig) -> pd.DataFrame:
    """Fit every method on every (seed, SNR) embedding and score the recovered latent.

    One Lorenz latent is generated per seed and reused across SNRs. Failures
    are recorded in the ``error`` column of the affected rows.

    Returns:
        One row per (seed, snr, method), columns ``SWEEP_COLUMNS``
    """
    if not snr_values:
        raise InvalidArgumentError("snr_values must not be empty")
    if not methods:
        raise InvalidArgumentError("methods must not be empty")
    if any(not snr > 0 for snr in snr_values):
        raise InvalidArgumentError(f"SNR values must be positive, got {list(snr_values)}")
    names = [registry.resolve(name).name for name in methods]

    latents = dict(
        zip(
            config.seeds,
            map_ordered(lambda seed: lorenz_generate(config.lorenz, config.n_steps, seed), config.seeds),
        )
    )
    cells = [(seed, float(snr)) for seed in config.seeds for snr in snr_values]

    def run_cell(cell: tuple[int, float]) -> list[dict[str, Any]]:
        seed, snr = cell
        latent = latents[seed]
        base = {"seed": seed, "snr": snr, "d": config.d, "T": config.T}
        try:
            embed_seed, noise_seed = embedding_seeds(seed)
            observed, _ = embed_noisy(
                latent, config.ambient_dim, NoiseSpec(d_noise=config.d_noise, seed=noise_seed), snr, embed_seed
            )
            observed = mean_center(observed)
            covs = estimate_crosscov(observed, 2 * config.T)
        except DynCompError as e:
            logger.warning("Sweep cell seed=%d snr=%g failed: %s", seed, snr, e)
            return [{**base, "method": name, "r2": np.nan, "pi_nats": np.nan, "error": str(e)} for name in names]

        options = FitOptions(
            T=config.T, d=config.d, n_restarts=config.n_restarts, max_iter=config.max_iter, seed=seed
        )
        rows = []
        for name in names:
            try:
                report = registry.fit(name, covs, options)
                r2 = reconstruction_r2(latent, project_series(observed, report.projection))
                rows.append({**base, "method": name, "r2": r2, "pi_nats": report.pi_nats, "error": ""})
            except DynCompError as e:
                logger.warning("Sweep cell seed=%d snr=%g method=%s failed: %s", seed, snr, name, e)
                rows.append({**base, "method": name, "r2": np.nan, "pi_nats": np.nan, "error": str(e)})
        return rows

    rows = [row for cell_rows in map_ordered(run_cell, cells) for row in cell_rows]
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def summarize_sweep(table: pd.DataFrame) -> pd.DataFrame:
    """Mean, standard deviation and count of R² per (snr, method)."""
    summary = table.groupby(["snr", "method"], sort=True)["r2"].agg(["mean", "std", "count"])
    return summary.reset_index()

