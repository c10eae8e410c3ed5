"""Random orthogonal embeddings of low-dimensional dynamics with structured noise."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.stats import ortho_group

from dyncomp.config.schema import NoiseSpec
from dyncomp.core.timeseries import FloatArray, Projection, TimeSeries
from dyncomp.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

REFERENCE_DRAWS = 1000
MAX_REJECTION_DRAWS = 1000


def embedding_seeds(seed: int) -> tuple[int, int]:
    """Independent (embedding, noise) seeds derived from one run seed."""
    embed_seed, noise_seed = np.random.SeedSequence(seed).generate_state(2)
    return int(embed_seed), int(noise_seed)


def noise_spectrum(variance: float, n: int, d_noise: float) -> FloatArray:
    """λ_j = variance · exp(-2j / d_noise) for j = 0 .. n-1."""
    if not variance > 0 or not d_noise > 0:
        raise InvalidArgumentError("Noise variance and d_noise must be positive")
    return variance * np.exp(-2.0 * np.arange(n) / d_noise)


def _haar(n: int, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    if n == 1:
        return np.ones((size, 1, 1))
    draws = ortho_group.rvs(dim=n, size=size, random_state=rng)
    return np.asarray(draws).reshape(size, n, n)


def _mean_angle(subspace: FloatArray, basis: FloatArray) -> float:
    return float(np.mean(scipy.linalg.subspace_angles(subspace, basis)))


@dataclass(frozen=True)
class NoiseModel:
    """Gaussian noise covariance U diag(λ) Uᵀ.

    Attributes:
        eigenvalues: λ_j, strictly decreasing
        basis: Orthogonal eigenvector matrix U (n × n)
    """

    eigenvalues: FloatArray
    basis: FloatArray

    @property
    def covariance(self) -> FloatArray:
        """Dense covariance matrix."""
        return np.asarray((self.basis * self.eigenvalues) @ self.basis.T, dtype=np.float64)

    def sample(self, n_steps: int, rng: np.random.Generator) -> FloatArray:
        """Independent draws, one row per step."""
        white = rng.standard_normal((n_steps, len(self.eigenvalues)))
        return np.asarray((white * np.sqrt(self.eigenvalues)) @ self.basis.T, dtype=np.float64)


def draw_noise_model(
    embedding: Projection, variance: float, d_noise: float, rng: np.random.Generator
) -> NoiseModel:
    """Noise whose leading eigenvectors sit at a typical angle to the embedding.

    The leading round(d_noise) eigenvectors are kept only when their mean
    principal angle to the embedding falls in the middle tercile of
    ``REFERENCE_DRAWS`` random orientations.
    """
    n = embedding.n
    eigenvalues = noise_spectrum(variance, n, d_noise)
    leading = min(max(round(d_noise), 1), n)
    if leading >= n:
        # The leading eigenvectors span everything; all orientations are equivalent.
        return NoiseModel(eigenvalues, _haar(n, rng)[0])

    reference = [
        _mean_angle(embedding.matrix, draw[:, :leading]) for draw in _haar(n, rng, REFERENCE_DRAWS)
    ]
    low, high = np.quantile(reference, [1 / 3, 2 / 3])
    candidate = _haar(n, rng)[0]
    for _ in range(MAX_REJECTION_DRAWS):
        if low <= _mean_angle(embedding.matrix, candidate[:, :leading]) <= high:
            return NoiseModel(eigenvalues, candidate)
        candidate = _haar(n, rng)[0]
    logger.warning("No noise orientation in the middle angle tercile after %d draws", MAX_REJECTION_DRAWS)
    return NoiseModel(eigenvalues, candidate)


def embed_noisy(
    latent: TimeSeries,
    ambient_dim: int,
    noise: NoiseSpec,
    snr: float | None,
    seed: int,
) -> tuple[TimeSeries, Projection]:
    """Embed ``latent`` in ``ambient_dim`` channels and add structured Gaussian noise.

    Args:
        latent: Centered low-dimensional dynamics
        ambient_dim: Number of output channels n
        noise: Noise spectrum shape and the seed of the noise orientation and samples
        snr: Top latent PC variance over top noise eigenvalue; infinity means no
            noise, None uses ``noise.variance`` as given
        seed: Seed of the embedding

    Returns:
        Tuple of (noisy n-channel series, orthonormal embedding)
    """
    k = latent.n_channels
    if ambient_dim < k:
        raise InvalidArgumentError(f"ambient_dim={ambient_dim} is smaller than the latent dimension {k}")
    if snr is not None and not snr > 0:
        raise InvalidArgumentError(f"snr must be positive, got {snr}")

    rng = np.random.default_rng(seed)
    embedding = Projection.orthonormalized(rng.standard_normal((ambient_dim, k)))
    signal = latent.data @ embedding.matrix.T

    top_latent = float(np.linalg.eigvalsh(np.atleast_2d(np.cov(latent.data, rowvar=False)))[-1])
    if snr is None:
        variance = noise.variance
    elif math.isinf(snr):
        variance = 0.0
    else:
        variance = top_latent / snr
    series = TimeSeries(signal, dt=latent.dt)
    if variance == 0.0:
        return series, embedding

    noise_rng = np.random.default_rng(noise.seed)
    model = draw_noise_model(embedding, variance, noise.d_noise, noise_rng)
    logger.debug("Embedding noise: top eigenvalue %.4g (top latent variance %.4g)", variance, top_latent)
    return series.with_data(signal + model.sample(latent.n_steps, noise_rng)), embedding
