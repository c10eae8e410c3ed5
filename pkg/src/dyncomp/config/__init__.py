"""Configuration loading and schema definitions."""

from dyncomp.config.loader import (
    RESOLVED_CONFIG_NAME,
    deep_merge,
    load_config,
    load_config_from_string,
)
from dyncomp.config.schema import (
    EvalSection,
    EvalSpec,
    FitOptions,
    FitSection,
    KernelSpec,
    LorenzParams,
    NoiseSpec,
    PISection,
    RunConfig,
    SweepConfig,
    SynthSection,
    TransformSection,
)

__all__ = [
    "RESOLVED_CONFIG_NAME",
    "EvalSection",
    "EvalSpec",
    "FitOptions",
    "FitSection",
    "KernelSpec",
    "LorenzParams",
    "NoiseSpec",
    "PISection",
    "RunConfig",
    "SweepConfig",
    "SynthSection",
    "TransformSection",
    "deep_merge",
    "load_config",
    "load_config_from_string",
]
