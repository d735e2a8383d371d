"""
Observability module for segre-ulrich.

This module configures stdlib logging and, optionally, logfire tracing.
Logs always go to stderr so that stdout only carries command output.
"""

import logging
import os
import sys
from contextlib import AbstractContextManager, nullcontext
from typing import Any, Optional

import logfire

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s"


def is_logfire_enabled() -> bool:
    """Check if LogFire is enabled via environment variable."""
    return os.getenv("LOGFIRE_ENABLED", "false").lower() in ("true", "1", "yes")


def configure_logging(level: Optional[str] = None) -> None:
    """Route package logs to stderr at the requested level (defaults to LOG_LEVEL)."""
    level_name = (level or os.getenv("LOG_LEVEL", "WARNING")).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def setup_logfire(
    service_name: str = "segre-ulrich",
    environment: Optional[str] = None,
) -> None:
    """
    Set up LogFire for observability.

    Args:
        service_name: The name of the service
        environment: The environment (dev, staging, prod)
    """
    if not is_logfire_enabled():
        return

    token = os.getenv("LOGFIRE_TOKEN")
    env = environment or os.getenv("ENVIRONMENT", "development")

    if not token:
        logfire.info("LogFire configuration incomplete. Set LOGFIRE_TOKEN environment variable or use 'logfire auth'.")
        return

    logfire.configure(
        token=token,
        service_name=service_name,
        environment=env,
        console=False,
    )
    logfire.info(
        "LogFire observability configured successfully",
        service_name=service_name,
        environment=env,
    )


def traced(name: str, **attributes: Any) -> AbstractContextManager[Any]:
    """Open a logfire span around an engine computation, or do nothing when tracing is off."""
    if not is_logfire_enabled():
        return nullcontext()
    return logfire.span(name, **attributes)


def shutdown_logfire() -> None:
    """Shutdown LogFire and flush any pending logs."""
    if is_logfire_enabled():
        logfire.info("Shutting down LogFire")
        logfire.shutdown()
