import json
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional, Type, Union

from pydantic import ValidationError as PydanticValidationError

from bochner_lab.core.config.base import BaseSettings
from bochner_lab.core.config.development import DevelopmentSettings
from bochner_lab.core.config.testing import TestingSettings


_active: Optional[BaseSettings] = None


@lru_cache()
def environment_settings() -> Union[DevelopmentSettings, TestingSettings]:
    """
    Get the appropriate settings based on the environment.
    Uses environment variable BOCHNER_LAB_ENV to determine which settings to load.
    Caches the result for performance.
    """
    env = os.getenv("BOCHNER_LAB_ENV", "development").lower()

    settings_class: Type[BaseSettings]
    if env == "testing":
        settings_class = TestingSettings
    else:  # default to development
        settings_class = DevelopmentSettings

    return settings_class()


def get_settings() -> BaseSettings:
    """Settings activated for this process, the environment settings by default."""
    return _active or environment_settings()


def activate_settings(new: Optional[BaseSettings]) -> None:
    """Make `new` the process-wide settings; None restores the environment."""
    global _active
    _active = new


def load_settings(
    config_file: Optional[Path] = None, overrides: Optional[Dict[str, Any]] = None
) -> BaseSettings:
    """
    Layer a JSON config file and explicit overrides on top of the environment.

    Args:
        config_file: Flat key/value JSON file, keys as in BaseSettings
        overrides: Values that win over the file (typically CLI flags)

    Returns:
        A validated settings instance
    """
    from bochner_lab.core.exceptions import InvalidParameters

    base = environment_settings()
    update: Dict[str, Any] = {}
    if config_file is not None:
        with open(config_file, encoding="utf-8") as handle:
            payload = json.load(handle)
        if not isinstance(payload, dict):
            raise InvalidParameters(f"config file {config_file} must hold a JSON object")
        update.update({key.upper(): value for key, value in payload.items()})
    if overrides:
        update.update({key.upper(): value for key, value in overrides.items()})

    unknown = sorted(set(update) - set(type(base).model_fields))
    if unknown:
        raise InvalidParameters(f"unknown configuration keys: {', '.join(unknown)}")
    try:
        return type(base).model_validate({**base.model_dump(), **update})
    except PydanticValidationError as exc:
        raise InvalidParameters(str(exc)) from exc


# Export settings instance for easy import
settings = get_settings()

__all__ = [
    "BaseSettings",
    "activate_settings",
    "environment_settings",
    "get_settings",
    "load_settings",
    "settings",
]
