from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache
import logging

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    """
    Toolkit configuration loaded from ANGLED_* environment variables (or .env).

    Exactness: tolerances only ever touch planar realizations. Every
    comparison against pi or 2*pi is done on exact rationals.
    """
    # Planar realization
    REALIZATION_TOLERANCE: float = 1e-9
    SNAP_TOLERANCE: float = 1e-9
    ANGLE_DENOMINATOR_LIMIT: int = 10**12

    # Procedure bounds
    DEFAULT_MAX_STEPS: int = 64
    TIETZE_BUDGET: int = 100
    SOLVER_MAX_ROUNDS: int = 1000

    # Reproducibility / CLI
    DEFAULT_SEED: int = 0
    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(
        env_prefix="ANGLED_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore"
    )

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        for name in ("REALIZATION_TOLERANCE", "SNAP_TOLERANCE"):
            value = getattr(self, name)
            if not (0 < value <= 1e-3):
                raise ValueError(
                    f"{name} must be in (0, 1e-3], got {value}. "
                    "Tolerances only affect planar realizations; keep them small."
                )

        if self.ANGLE_DENOMINATOR_LIMIT < 10**3:
            raise ValueError(
                "ANGLE_DENOMINATOR_LIMIT must be at least 1000 "
                "(it bounds the denominators recovered from planar angles)"
            )

        if self.DEFAULT_MAX_STEPS < 1:
            raise ValueError("DEFAULT_MAX_STEPS must be at least 1")

        if self.TIETZE_BUDGET < 0:
            raise ValueError("TIETZE_BUDGET must be non-negative")

        if self.SOLVER_MAX_ROUNDS < 1:
            raise ValueError("SOLVER_MAX_ROUNDS must be at least 1")

        if self.LOG_LEVEL.upper() not in _LOG_LEVELS:
            raise ValueError(
                f"LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}, got {self.LOG_LEVEL!r}"
            )

    @property
    def log_level(self) -> int:
        return logging.getLevelName(self.LOG_LEVEL.upper())


@lru_cache()
def get_settings() -> Settings:
    """
    Cached settings singleton.
    Loaded once per process; tests that need other values construct Settings directly.
    """
    return Settings()
