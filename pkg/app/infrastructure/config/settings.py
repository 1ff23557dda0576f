"""Application settings"""

from pydantic_settings import BaseSettings
from typing import List, Sequence, Union


class Settings(BaseSettings):
    """Application settings"""

    # Application
    APP_NAME: str = "Dual Graph Hypersurface Toolkit"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Point counting
    COUNT_BUDGET: int = 2 ** 31  # leaves per count
    DEFAULT_QS: List[int] = [2, 3]
    DEFAULT_SEED: int = 0

    # Randomized membership checks on V(a)
    EVAL_PRIME: int = 10007
    EVAL_SAMPLES: int = 50

    # Determinants over the 0/1 grid
    MULTILINEAR_MAX_VARS: int = 20

    # Process fan-out for grid points and top-level count branches (1 = serial)
    WORKERS: int = 1
    PARALLEL_MIN_TASKS: int = 4096

    # Girth-5 search
    GIRTH_EXHAUSTIVE_LIMIT: int = 10
    GIRTH_STRETCH_LIMIT: int = 12
    SEARCH_MAX_GRAPHS: int = 200000

    # Admissibility sweeps
    ADMISSIBILITY_FULL_SWEEP_LIMIT: int = 5000
    ADMISSIBILITY_SAMPLE_SIZE: int = 2  # all specs with |I| + |J| up to this
    ADMISSIBILITY_RANDOM_SPECS: int = 200

    # Output
    REPORT_DIR: str = "reports"
    DEFAULT_FORMAT: str = "json"  # json, csv, text

    class Config:
        env_file = ".env"
        case_sensitive = True

    def get_qs(self, raw: Union[str, Sequence[int], None] = None) -> List[int]:
        """Parse a q list like "2,3,4" (or fall back to DEFAULT_QS)"""
        from sympy import factorint

        if raw is None or raw == "":
            values = list(self.DEFAULT_QS)
        elif isinstance(raw, str):
            try:
                values = [int(token) for token in raw.split(",") if token.strip()]
            except ValueError:
                raise ValueError(f"Invalid q list: {raw}") from None
        else:
            values = [int(v) for v in raw]
        for q in values:
            if q < 2 or len(factorint(q)) != 1:
                raise ValueError(f"q={q} is not a prime power")
        return values


settings = Settings()
