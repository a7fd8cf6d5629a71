"""Process settings using Pydantic."""

from functools import lru_cache
from pathlib import Path
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Environment-level settings.

    Run physics lives in ``RunConfig``; this only holds knobs that belong to the
    process (where outputs go, how it logs).
    """

    model_config = SettingsConfigDict(
        env_prefix="HVSL_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Output root override; relative output directories in configs resolve against it
    output_root: Path = Field(default=Path("runs"))

    # Numerics defaults; NumericsConfig falls back to these when a config omits them
    default_picard_tol: float = Field(default=1e-14, gt=0.0)
    default_picard_max: int = Field(default=200, ge=1)
    boundary_warn_ratio: float = Field(default=1e-10, gt=0.0)

    # Observability
    enable_tracing: bool = Field(default=False)
    log_level: str = Field(default="INFO")
    log_json: bool = Field(default=True)


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
