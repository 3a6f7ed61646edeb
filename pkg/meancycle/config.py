"""Toolkit configuration management."""

from typing import Optional
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from MCT_* environment variables."""

    # Application
    app_name: str = "Mean Cycle Time Toolkit"
    app_version: str = "1.0.0"
    environment: str = "development"

    # Monte Carlo
    sim_steps: int = Field(default=200_000, ge=1000)
    sim_replications: int = Field(default=32, ge=2)
    sim_seed: int = 42
    sim_renorm_period: int = Field(default=64, ge=1)
    threads: Optional[int] = Field(default=None, ge=1)  # MCT_THREADS caps the replication pool

    # Numerics
    quad_tolerance: float = 1e-10
    quad_max_depth: int = 60
    pivot_tolerance: float = 1e-13

    # Analytic / chain
    ratio_degenerate_threshold: float = 1e-12
    geometric_truncation: float = 1e-12
    chain_max_states: int = 100_000
    exact_denominator_limit: int = 1024

    # Comparison
    compare_z_threshold: float = 4.0

    # Logging
    log_level: str = "WARNING"
    log_file: Optional[str] = None

    # Monitoring
    enable_metrics: bool = True

    model_config = SettingsConfigDict(
        env_prefix="MCT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Return the global settings instance."""
    return settings
