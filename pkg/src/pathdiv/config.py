"""
Configuration management for Pathdiv.

Handles loading and validating solver settings from environment
variables and an optional ``.env`` file. CLI flags override them.
"""

import logging
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

Engine = Literal["exhaustive", "pathfollow"]


class Settings(BaseSettings):
    """Solver settings loaded from environment or config file."""

    model_config = SettingsConfigDict(
        env_prefix="PATHDIV_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Search
    threads: int = Field(default=1, ge=1, description="Worker threads for simplex scans")
    engine: Engine = Field(
        default="exhaustive",
        description="Plain-mode search engine: exhaustive scan or door-in/door-out walk",
    )
    chunk_size: int = Field(
        default=512,
        ge=1,
        description="Simplices (or divisions) handed to a worker at a time",
    )

    # Desk-scale guards
    oracle_max_divisions: int = Field(
        default=5_000_000,
        description="Refuse oracle runs over more divisions than this",
    )
    sweep_max_vertices: int = Field(
        default=2_000_000,
        description="Refuse properness sweeps over more vertices than this",
    )

    # Instance generation
    default_max_value: int = Field(
        default=10,
        ge=0,
        description="Largest item value drawn by the generator when none is given",
    )

    # Logging
    log_level: str = Field(default="WARNING", description="Log level for stderr output")

    @field_validator("log_level", mode="before")
    @classmethod
    def validate_log_level(cls, v):
        """Normalize and check the level name."""
        name = str(v).upper()
        if not isinstance(logging.getLevelName(name), int):
            raise ValueError(f"Unknown log level: {v}")
        return name

    @property
    def log_level_number(self) -> int:
        """Numeric stdlib level for ``log_level``."""
        return logging.getLevelName(self.log_level)


# Global settings instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def init_settings(**kwargs) -> Settings:
    """Initialize settings with custom values."""
    global _settings
    _settings = Settings(**kwargs)
    return _settings
