"""Configuration loading: YAML/JSON files merged over command-line values."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml

from dyncomp.config.schema import RunConfig
from dyncomp.errors import InvalidArgumentError

RESOLVED_CONFIG_NAME = "resolved_config.json"


def deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Deep merge two dictionaries, with override taking precedence."""
    result = base.copy()

    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        elif key in result and isinstance(result[key], list) and isinstance(value, list):
            # For lists, extend rather than replace
            result[key] = result[key] + value
        else:
            result[key] = value

    return result


def load_yaml_file(path: Path) -> dict[str, Any]:
    """Load a YAML (or JSON) mapping; a missing file is an error."""
    if not path.exists():
        raise InvalidArgumentError(f"Config file not found: {path}")
    with open(path) as f:
        data = yaml.safe_load(f)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise InvalidArgumentError(f"Config file {path} must contain a mapping")
    return data


def load_config(
    config_path: Path | str | None = None,
    overrides: dict[str, Any] | None = None,
) -> RunConfig:
    """Build a RunConfig from command-line values and an optional config file.

    Args:
        config_path: YAML or JSON file; its values take precedence
        overrides: Values collected from command-line flags

    Returns:
        Validated configuration
    """
    merged: dict[str, Any] = dict(overrides or {})
    if config_path is not None:
        # Lists from the file replace rather than extend flag values.
        file_data = load_yaml_file(Path(config_path))
        merged = deep_merge(_without_list_conflicts(merged, file_data), file_data)
    return RunConfig(**merged)


def _without_list_conflicts(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    result = {}
    for key, value in base.items():
        other = override.get(key)
        if isinstance(value, list) and isinstance(other, list):
            continue
        if isinstance(value, dict) and isinstance(other, dict):
            value = _without_list_conflicts(value, other)
        result[key] = value
    return result


def load_config_from_string(yaml_string: str) -> RunConfig:
    """Load configuration from a YAML string (useful for testing)."""
    data = yaml.safe_load(yaml_string)
    return RunConfig(**(data if data else {}))
