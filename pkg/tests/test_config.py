"""Tests for engine settings."""

import os

import pytest
from pydantic import ValidationError

from segre_ulrich.config import EngineSettings, get_settings


def test_defaults() -> None:
    os.environ.pop("LOG_LEVEL", None)
    settings = get_settings()
    assert settings.expand_factor_products is False
    assert settings.chi_twist_margin == 2
    assert settings.log_level == "WARNING"


def test_environment_overrides() -> None:
    os.environ["SEGRE_ULRICH_EXPAND_PRODUCTS"] = "Yes"
    os.environ["SEGRE_ULRICH_CHI_MARGIN"] = "5"
    os.environ["LOG_LEVEL"] = "info"
    settings = get_settings()
    assert settings.expand_factor_products is True
    assert settings.chi_twist_margin == 5
    assert settings.log_level == "INFO"


def test_explicit_arguments_win() -> None:
    os.environ["SEGRE_ULRICH_EXPAND_PRODUCTS"] = "true"
    os.environ["LOG_LEVEL"] = "INFO"
    settings = get_settings(expand_factor_products=False, log_level="debug")
    assert settings.expand_factor_products is False
    assert settings.log_level == "DEBUG"


def test_validation() -> None:
    with pytest.raises(ValidationError):
        EngineSettings(log_level="loud")
    with pytest.raises(ValidationError):
        EngineSettings(chi_twist_margin=-1)
