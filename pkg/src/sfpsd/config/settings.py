"""Settings loader - environment (.env aware) configuration for runs."""

from dataclasses import dataclass
from functools import lru_cache
import os
from typing import Callable, TypeVar

import psutil
from dotenv import load_dotenv

from sfpsd.errors import ConfigError

# Load environment variables
load_dotenv()

T = TypeVar("T")


def _read(name: str, default: T, cast: Callable[[str], T]) -> T:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError as e:
        raise ConfigError(f"{name} has invalid value {raw!r}: {e}", variable=name) from e


def _default_threads() -> int:
    return max(1, psutil.cpu_count(logical=True) or 1)


@dataclass(frozen=True)
class Settings:
    """Run-wide defaults; CLI flags override them per invocation."""

    max_threads: int
    rel_eps: float
    max_terms: int
    tol_rel: float
    qhyper_radius: float
    log_level: str

    def __post_init__(self):
        if self.max_threads < 1:
            raise ConfigError("SFPSD_MAX_THREADS must be >= 1", variable="SFPSD_MAX_THREADS")
        if not self.rel_eps > 0:
            raise ConfigError("SFPSD_REL_EPS must be > 0", variable="SFPSD_REL_EPS")
        if self.max_terms < 1:
            raise ConfigError("SFPSD_MAX_TERMS must be >= 1", variable="SFPSD_MAX_TERMS")
        if not self.tol_rel > 0:
            raise ConfigError("SFPSD_TOL_REL must be > 0", variable="SFPSD_TOL_REL")
        if not 0 < self.qhyper_radius < 1:
            raise ConfigError(
                "SFPSD_QHYPER_RADIUS must lie in (0, 1)", variable="SFPSD_QHYPER_RADIUS"
            )

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            max_threads=_read("SFPSD_MAX_THREADS", _default_threads(), int),
            rel_eps=_read("SFPSD_REL_EPS", 1e-14, float),
            max_terms=_read("SFPSD_MAX_TERMS", 10_000, int),
            tol_rel=_read("SFPSD_TOL_REL", 1e-8, float),
            qhyper_radius=_read("SFPSD_QHYPER_RADIUS", 0.5, float),
            log_level=_read("SFPSD_LOG_LEVEL", "WARNING", str.upper),
        )

    def series_control(self):
        from sfpsd.specialfn.series import SeriesControl

        return SeriesControl(rel_eps=self.rel_eps, max_terms=self.max_terms)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return the process-wide settings (read once)."""
    return Settings.from_env()
