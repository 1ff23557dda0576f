"""Report storage utilities"""
import logging
from pathlib import Path
from typing import Optional, Union

from app.infrastructure.config.settings import settings

logger = logging.getLogger(__name__)

EXTENSIONS = {"json": ".json", "csv": ".csv", "text": ".txt"}


def ensure_report_dir() -> Path:
    """Ensure report directory exists"""
    report_dir = Path(settings.REPORT_DIR)
    report_dir.mkdir(parents=True, exist_ok=True)
    return report_dir


def default_report_path(subcommand: str, fmt: str) -> Path:
    return ensure_report_dir() / f"{subcommand}{EXTENSIONS.get(fmt, '.txt')}"


def save_report(body: str, path: Optional[Union[str, Path]] = None, subcommand: str = "report", fmt: str = "json") -> Path:
    """Write a rendered report and return its path"""
    target = Path(path) if path else default_report_path(subcommand, fmt)
    target.parent.mkdir(parents=True, exist_ok=True)
    if not body.endswith("\n"):
        body += "\n"
    target.write_text(body, encoding="utf-8")
    logger.info("💾 report written to %s", target)
    return target
