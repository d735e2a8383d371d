"""Engine settings read from the environment (and a ``.env`` file loaded by the CLI)."""

import logging
import os
from typing import Optional

from pydantic import BaseModel, Field, field_validator

logger = logging.getLogger(__name__)

_TRUE_VALUES = ("true", "1", "yes")
_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class EngineSettings(BaseModel):
    """Knobs shared by the engine and the command line."""

    expand_factor_products: bool = Field(
        default=False,
        description="Compute Omega^p(t) x Omega^q(s) factor products exactly instead of refusing them.",
    )
    chi_twist_margin: int = Field(
        default=2,
        ge=0,
        description="Sample twists for chi-consistency run over -d-margin .. d+margin.",
    )
    log_level: str = Field(default="WARNING", description="Level for the stderr log handler.")

    @field_validator("log_level")
    @classmethod
    def known_level(cls, v: str) -> str:
        level = v.strip().upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"Unknown log level {v!r}; expected one of {', '.join(_LOG_LEVELS)}")
        return level


def _env_flag(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in _TRUE_VALUES


def get_settings(
    expand_factor_products: Optional[bool] = None,
    log_level: Optional[str] = None,
) -> EngineSettings:
    """Build settings from the environment; explicit arguments win over environment variables."""
    settings = EngineSettings(
        expand_factor_products=(
            expand_factor_products
            if expand_factor_products is not None
            else _env_flag("SEGRE_ULRICH_EXPAND_PRODUCTS", False)
        ),
        chi_twist_margin=int(os.getenv("SEGRE_ULRICH_CHI_MARGIN", "2")),
        log_level=log_level or os.getenv("LOG_LEVEL", "WARNING"),
    )
    logger.debug("Engine settings: %s", settings.model_dump())
    return settings
