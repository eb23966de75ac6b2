import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from errors import ConfigError

# Load environment variables
load_dotenv()

# ENV VAR -> field name; unset variables fall back to the Settings defaults.
ENV_FIELDS = {
    "DOMATIC_ORACLE_SUBSET_LIMIT": "oracle_subset_limit",
    "DOMATIC_ORACLE_PARTITION_LIMIT": "oracle_partition_limit",
    "DOMATIC_DEFAULT_LAMBDA": "default_lambda",
    "DOMATIC_TRIAL_CAP": "trial_cap",
    "DOMATIC_WORKERS": "workers",
    "DOMATIC_LOG_LEVEL": "log_level",
    "DOMATIC_LOG_DIR": "log_dir",
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    """Runtime knobs shared by the solvers and the CLI."""

    # 2^n subset enumeration (minimal dominating sets oracle)
    oracle_subset_limit: int = Field(16, ge=1, le=24)
    # k^n partition search (domatic number oracle)
    oracle_partition_limit: int = Field(12, ge=1, le=20)
    default_lambda: float = Field(20.0, gt=0)
    trial_cap: int = Field(1_000_000, ge=1)
    workers: int = Field(1, ge=1, le=256)
    log_level: str = "INFO"
    log_dir: Optional[str] = None

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        v = v.upper()
        if v not in LOG_LEVELS:
            raise ValueError(f"Invalid log level. Use one of: {', '.join(LOG_LEVELS)}")
        return v


def load_settings(environ=None) -> Settings:
    """Build ``Settings`` from the environment (or an explicit mapping)."""
    environ = os.environ if environ is None else environ
    raw = {field: environ[var] for var, field in ENV_FIELDS.items() if environ.get(var)}
    try:
        return Settings(**raw)
    except ValidationError as e:
        bad = ", ".join(
            var for var, field in ENV_FIELDS.items()
            if any(err["loc"] and err["loc"][0] == field for err in e.errors())
        )
        raise ConfigError(f"Invalid configuration in {bad or 'environment'}: {e}") from e


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
