"""
Application settings and configuration.

This module provides environment-based configuration management using Pydantic.
Settings are read from ``PNEUMA_``-prefixed environment variables or a .env file;
every field has a default, so a bare checkout runs without configuration.

Example usage:
    from pneumalogic.config import get_settings

    settings = get_settings()
    cfg = settings.sim_config(t_end=60.0)

    # Or load from a custom .env file
    settings = Settings(_env_file=".env.bench")
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from pneumalogic.exceptions import ConfigurationError
from pneumalogic.models.trace import SimConfig


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.

    Attributes:
        env: Environment mode ("test" or "prod"). Default: "prod"
        log_level: Console/file log level (default: INFO)
        logs_dir: Directory for rotating log files (default: logs)
        json_logs: Use JSON records for file logs (default: False)
        log_to_file: Also write logs to ``logs_dir`` (default: False)
        journal_dir: Directory for JSON-lines run journals; disabled when unset
        dt_max: Base integration step in seconds (default: 0.01)
        t_end: Simulated horizon in seconds (default: 30)
        event_tol: Crossing localization tolerance in psi (default: 1e-6)
        record_stride: Integration steps per regular trace sample (default: 10)
        dwell_min: Minimum dwell of an extracted state in seconds (default: 0.05)
        min_cycles: Chart cycles a sequence must cover to pass (default: 2)
        batch_workers: Worker processes for batch simulation (default: 1)
    """

    model_config = SettingsConfigDict(
        env_prefix="PNEUMA_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    env: Literal["test", "prod"] = "prod"

    # =========================================================================
    # Logging
    # =========================================================================

    log_level: str = Field(default="INFO", description="Logging level name")
    logs_dir: str = Field(default="logs", description="Directory for log files")
    json_logs: bool = Field(default=False, description="JSON records in file logs")
    log_to_file: bool = Field(default=False, description="Write a rotating log file")
    journal_dir: Optional[str] = Field(
        default=None,
        description="Directory for per-run JSON-lines journals (disabled when unset)",
    )

    # =========================================================================
    # Simulation defaults
    # =========================================================================

    dt_max: float = Field(default=0.01, gt=0, le=1.0, description="Base step (s)")
    t_end: float = Field(default=30.0, gt=0, description="Simulated horizon (s)")
    event_tol: float = Field(default=1e-6, gt=0, le=0.1, description="Crossing tol (psi)")
    record_stride: int = Field(default=10, ge=1, le=10_000, description="Steps per sample")

    # =========================================================================
    # Verification defaults
    # =========================================================================

    dwell_min: float = Field(default=0.05, ge=0, description="Dwell filter (s)")
    min_cycles: int = Field(default=2, ge=1, le=100, description="Cycles required to pass")

    batch_workers: int = Field(default=1, ge=1, le=64, description="Batch worker processes")

    # =========================================================================
    # Validators
    # =========================================================================

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is a standard level name."""
        level = v.upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"Unknown log level: {v}")
        return level

    @model_validator(mode="after")
    def validate_horizon(self) -> "Settings":
        """The horizon must span more than one base step."""
        if self.t_end <= self.dt_max:
            raise ValueError(f"t_end ({self.t_end}) must exceed dt_max ({self.dt_max})")
        return self

    # =========================================================================
    # Helper Methods
    # =========================================================================

    def sim_config(self, **overrides: Any) -> SimConfig:
        """
        Build a simulation config from the defaults plus explicit overrides.

        Overrides set to None are ignored, so optional CLI flags can be passed
        straight through.
        """
        values = {
            "dt_max": self.dt_max,
            "t_end": self.t_end,
            "event_tol": self.event_tol,
            "record_stride": self.record_stride,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return SimConfig(**values)

    def ensure_directories(self) -> None:
        """Ensure the logs and journal directories exist."""
        if self.log_to_file:
            Path(self.logs_dir).mkdir(parents=True, exist_ok=True)
        if self.journal_dir:
            Path(self.journal_dir).mkdir(parents=True, exist_ok=True)


@lru_cache
def get_settings() -> Settings:
    """
    Get cached application settings.

    Returns:
        Settings instance loaded from the environment.

    Raises:
        ConfigurationError: If a setting is invalid.
    """
    try:
        return Settings()
    except Exception as e:
        raise ConfigurationError(
            f"Failed to load configuration: {e}\n"
            "Check the PNEUMA_* environment variables or your .env file."
        ) from e


def validate_settings() -> Settings:
    """
    Validate and return settings, clearing the cache first.

    Returns:
        Validated Settings instance.

    Raises:
        ConfigurationError: If validation fails.
    """
    get_settings.cache_clear()
    return get_settings()
