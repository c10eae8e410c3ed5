"""Synthetic data generators."""

from dyncomp.config.schema import KernelSpec, LorenzParams, NoiseSpec
from dyncomp.synth.embedding import (
    NoiseModel,
    draw_noise_model,
    embed_noisy,
    embedding_seeds,
    noise_spectrum,
)
from dyncomp.synth.gp import gp_generate, kernel_autocov, kernel_crosscov
from dyncomp.synth.lorenz import integrate_lorenz, lorenz_generate
from dyncomp.synth.var import stationary_covariance, var1_crosscov, var1_generate

__all__ = [
    "KernelSpec",
    "LorenzParams",
    "NoiseModel",
    "NoiseSpec",
    "draw_noise_model",
    "embed_noisy",
    "embedding_seeds",
    "gp_generate",
    "integrate_lorenz",
    "kernel_autocov",
    "kernel_crosscov",
    "lorenz_generate",
    "noise_spectrum",
    "stationary_covariance",
    "var1_crosscov",
    "var1_generate",
]
