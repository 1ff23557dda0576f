"""Logging setup"""
import logging
import sys
from typing import Optional

from app.infrastructure.config.settings import settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: Optional[str] = None) -> None:
    """Send log records to stderr so stdout only carries reports"""
    name = (level or settings.LOG_LEVEL).upper()
    if settings.DEBUG:
        name = "DEBUG"
    numeric = getattr(logging, name, None)
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level: {name}")
    logging.basicConfig(stream=sys.stderr, level=numeric, format=LOG_FORMAT, force=True)
