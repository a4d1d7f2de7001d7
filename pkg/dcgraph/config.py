"""Optional JSON settings for the command line tool."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, replace
from typing import Any

from marshmallow import RAISE, Schema, ValidationError, fields, post_load, validate

from dcgraph.errors import ConfigError
from dcgraph.selector import STRATEGIES

logger = logging.getLogger(__name__)

CONFIG_ENV = "DCGRAPH_CONFIG"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(frozen=True)
class Settings:
    """Defaults the CLI falls back to when a flag is not given.

    Attributes:
        strategy: Selector strategy name for ``extend`` and ``build-generic``.
        max_rounds_factor: Multiplier for the default ``build-generic`` round budget.
        workers: Processes ``enumerate`` may use.
        log_level: Level of the diagnostic log.
        name_seed: Vertex naming seed for ``build-generic``, None for sequential names.

    """

    strategy: str = "greedy"
    max_rounds_factor: int = 10
    workers: int = 1
    log_level: str = "WARNING"
    name_seed: int | None = None

    def override(self, **changes: Any) -> Settings:  # noqa: ANN401
        """Return a copy with every change that is not None applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


class SettingsSchema(Schema):
    """Schema for the settings file."""

    class Meta:
        """Unknown keys are errors."""

        unknown = RAISE

    strategy = fields.Str(load_default="greedy", validate=validate.OneOf(sorted(STRATEGIES)))
    max_rounds_factor = fields.Int(load_default=10, strict=True, validate=validate.Range(min=1))
    workers = fields.Int(load_default=1, strict=True, validate=validate.Range(min=1))
    log_level = fields.Str(load_default="WARNING", validate=validate.OneOf(LOG_LEVELS))
    name_seed = fields.Int(load_default=None, allow_none=True, strict=True)

    @post_load
    def make_settings(self, data: dict[str, Any], **kwargs: Any) -> Settings:  # noqa: ANN401
        """Turn the loaded dictionary into Settings."""
        return Settings(**data)


def _normalize_legacy_keys(data: dict[str, Any]) -> None:
    """Map renamed keys onto their current names."""
    if "rounds_factor" in data:
        legacy = data.pop("rounds_factor")
        if "max_rounds_factor" not in data:
            data["max_rounds_factor"] = legacy
        logger.warning("Config key 'rounds_factor' is deprecated; use 'max_rounds_factor'.")


def resolve_config_path(flag: str | None) -> str | None:
    """Return the settings path from ``--config`` or the environment, if any."""
    return flag or os.environ.get(CONFIG_ENV) or None


def load_settings(path: str | None) -> Settings:
    """Load settings from a JSON file, or return the defaults when ``path`` is None.

    Raises:
        ConfigError: if the file cannot be read, is not a JSON object or fails validation.

    """
    if path is None:
        return Settings()
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error("Error loading config: %s", e)
        raise ConfigError(f"cannot read settings from {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"settings file {path} must contain a JSON object")
    _normalize_legacy_keys(data)
    try:
        return SettingsSchema().load(data)
    except ValidationError as e:
        logger.error("Error loading config: %s", e.messages)
        raise ConfigError(f"invalid settings in {path}: {e.messages}") from e
