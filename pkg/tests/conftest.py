"""
Pytest configuration file for the segre_ulrich package tests.

This file contains environment setup and the varieties shared by several test files.
"""

import os
import sys
from pathlib import Path
from typing import Iterator

import pytest

# Add the project root to the Python path
# This ensures imports work correctly during testing
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from segre_ulrich.engine.variety import SegreVeronese  # noqa: E402


@pytest.fixture(autouse=True)
def env_setup() -> Iterator[None]:
    """
    Set up environment variables for tests and restore them after.

    Tracing is switched off and logging kept quiet so stdout only carries command output.
    """
    original_env = os.environ.copy()

    os.environ["LOG_LEVEL"] = "ERROR"
    os.environ["LOGFIRE_ENABLED"] = "false"
    os.environ.pop("SEGRE_ULRICH_EXPAND_PRODUCTS", None)
    os.environ.pop("SEGRE_ULRICH_CHI_MARGIN", None)

    yield

    os.environ.clear()
    os.environ.update(original_env)


@pytest.fixture
def p1p1() -> SegreVeronese:
    return SegreVeronese(n=(1, 1), k=(1, 1))


@pytest.fixture
def p2p1() -> SegreVeronese:
    return SegreVeronese(n=(2, 1), k=(1, 1))


@pytest.fixture
def p2p2() -> SegreVeronese:
    return SegreVeronese(n=(2, 2), k=(1, 1))
