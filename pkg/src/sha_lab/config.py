"""Application configuration using Pydantic Settings."""

from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix ``SHA_LAB_``)."""

    model_config = SettingsConfigDict(
        env_prefix="SHA_LAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # LMFDB REST API
    lmfdb_api_url: str = "https://www.lmfdb.org/api"
    lmfdb_cache_dir: Path = Path.home() / ".cache" / "sha_lab" / "lmfdb"
    lmfdb_timeout: float = 30.0
    lmfdb_max_limit: int = Field(default=100_000, ge=1)
    lmfdb_page_size: int = Field(default=100, ge=1)
    lmfdb_max_retries: int = Field(default=3, ge=0)
    lmfdb_retry_backoff_seconds: float = 1.0

    # BSD consistency tolerances (relative)
    bsd_tolerance: float = 1e-4
    synthetic_tolerance: float = 1e-10

    # Experiment runs
    output_dir: Path = Path("runs")
    threads: int = Field(default=1, ge=1)

    # Observability
    log_level: str = "INFO"


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
