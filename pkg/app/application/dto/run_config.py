"""Run configuration DTO"""
from typing import List, Optional

from pydantic import BaseModel, field_validator

from app.infrastructure.config.settings import settings


class RunConfig(BaseModel):
    """Effective options of one CLI run, echoed into reports"""
    subcommand: str
    graphs: List[str] = []
    qs: List[int] = []
    budget: int = settings.COUNT_BUDGET
    seed: int = settings.DEFAULT_SEED
    format: str = settings.DEFAULT_FORMAT
    vmin: Optional[int] = None
    vmax: Optional[int] = None
    exhaustive_limit: int = settings.GIRTH_EXHAUSTIVE_LIMIT

    @field_validator("qs")
    @classmethod
    def _prime_powers(cls, value: List[int]) -> List[int]:
        return settings.get_qs(value) if value else value

    @field_validator("format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ("json", "csv", "text"):
            raise ValueError(f"unknown format '{value}'")
        return value
