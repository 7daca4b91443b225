import os
from typing import Optional

from pydantic import BaseModel, Field, field_validator

from .exceptions import ConfigurationError

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    default_budget: int = Field(default=100, ge=0)
    log_level: str = Field(default="WARNING", min_length=1)
    max_universe: int = Field(default=7, ge=1, le=9)  # 9! permutations is the ceiling
    suite_seed: int = 20240917

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        if value not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return value

    class Config:
        frozen = True


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")


def load_settings() -> Settings:
    """Build settings from the environment (call load_dotenv() first to pick up .env)"""
    try:
        return Settings(
            default_budget=_int_env("NOMSUPPORT_DEFAULT_BUDGET", 100),
            log_level=os.getenv("NOMSUPPORT_LOG_LEVEL", "WARNING").upper(),
            max_universe=_int_env("NOMSUPPORT_MAX_UNIVERSE", 7),
            suite_seed=_int_env("NOMSUPPORT_SUITE_SEED", 20240917),
        )
    except ConfigurationError:
        raise
    except Exception as e:
        raise ConfigurationError(f"Invalid nomsupport configuration: {e}")


# Global settings instance
settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance"""
    global settings
    if settings is None:
        settings = load_settings()
    return settings


def reset_settings() -> None:
    global settings
    settings = None
