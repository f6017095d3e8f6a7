"""Configuration for the q-series identity verifier."""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import Literal, Optional, Union

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, ValidationInfo, field_validator

# Load environment variables from a local .env if present.
load_dotenv()


AllowedFormat = Literal["text", "json"]
AllowedLogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]

DEFAULT_DEPTH_CAP = 64
DEFAULT_SEED = 20240601


class Settings(BaseModel):
    """Runtime configuration derived from environment variables."""

    default_order: Optional[int] = Field(default=None, alias="QID_DEFAULT_ORDER")
    depth_cap: int = Field(default=DEFAULT_DEPTH_CAP, alias="QID_DEPTH_CAP")
    jobs: int = Field(default=1, alias="QID_JOBS")
    output_format: AllowedFormat = Field(default="text", alias="QID_FORMAT")
    seed: int = Field(default=DEFAULT_SEED, alias="QID_SEED")
    report_path: Optional[str] = Field(default=None, alias="QID_REPORT_PATH")
    log_level: AllowedLogLevel = Field(default="WARNING", alias="QID_LOG_LEVEL")

    @field_validator("default_order", "report_path", mode="before")
    @classmethod
    def _blank_is_unset(cls, value: Union[str, int, None]) -> Union[str, int, None]:
        if isinstance(value, str) and not value.strip():
            return None
        return value

    @field_validator("depth_cap", "jobs", "seed", mode="before")
    @classmethod
    def _coerce_int(cls, value: Union[str, int]) -> Union[str, int]:
        if isinstance(value, str):
            return int(value.strip())
        return value

    @field_validator("default_order")
    @classmethod
    def _validate_order(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 0:
            raise ValueError("QID_DEFAULT_ORDER must be a non-negative integer.")
        return value

    @field_validator("depth_cap")
    @classmethod
    def _validate_depth_cap(cls, value: int) -> int:
        if value < 1:
            raise ValueError("QID_DEPTH_CAP must be at least 1.")
        return value

    @field_validator("jobs")
    @classmethod
    def _validate_jobs(cls, value: int) -> int:
        if value < 1:
            raise ValueError("QID_JOBS must be at least 1.")
        return value

    @field_validator("output_format", "log_level", mode="before")
    @classmethod
    def _normalize_choice(cls, value: Optional[str], info: ValidationInfo) -> Optional[str]:
        if value is None:
            return value
        text = value.strip()
        return text.lower() if info.field_name == "output_format" else text.upper()

    @property
    def report_path_obj(self) -> Optional[Path]:
        """Return the report path as a Path instance, if configured."""
        return Path(self.report_path).expanduser() if self.report_path else None


_KEYS = (
    "QID_DEFAULT_ORDER",
    "QID_DEPTH_CAP",
    "QID_JOBS",
    "QID_FORMAT",
    "QID_SEED",
    "QID_REPORT_PATH",
    "QID_LOG_LEVEL",
)


def _raw_environment() -> dict[str, Optional[str]]:
    """Snapshot environment variables relevant to the settings."""
    return {key: value for key in _KEYS if (value := os.getenv(key)) and value.strip()}


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Load and memoize Settings from the environment."""
    try:
        return Settings(**_raw_environment())
    except ValidationError as exc:
        raise RuntimeError(f"Invalid QID configuration: {exc}") from exc


__all__ = [
    "AllowedFormat",
    "AllowedLogLevel",
    "DEFAULT_DEPTH_CAP",
    "DEFAULT_SEED",
    "Settings",
    "get_settings",
]
