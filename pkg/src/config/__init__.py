"""Config package exports."""

from .toggles import (
    DEFAULT_DEPTH_CAP,
    DEFAULT_SEED,
    AllowedFormat,
    AllowedLogLevel,
    Settings,
    get_settings,
)

__all__ = [
    "Settings",
    "AllowedFormat",
    "AllowedLogLevel",
    "DEFAULT_DEPTH_CAP",
    "DEFAULT_SEED",
    "get_settings",
]
