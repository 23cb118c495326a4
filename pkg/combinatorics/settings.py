"""
Runtime configuration read from the environment (and a .env file when the
entry point has loaded one).
"""

import logging
import os
from dataclasses import dataclass

logger = logging.getLogger(__name__)

_TRUTHY = {"1", "true", "yes", "on"}


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"⚠️  Ignoring non-integer {name}={raw!r}, using {default}")
        return default


@dataclass(frozen=True)
class Settings:
    max_tableaux: int = 200_000
    max_permutations: int = 2_000_000
    hull_budget: int = 20_000
    workers: int = 1
    cross_check: bool = False
    sum_n_max: int = 8
    verify_convexity_n_max: int = 4
    verify_count_n_max: int = 6
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            max_tableaux=_int_env("PARACAT_MAX_TABLEAUX", cls.max_tableaux),
            max_permutations=_int_env("PARACAT_MAX_PERMUTATIONS", cls.max_permutations),
            hull_budget=_int_env("PARACAT_HULL_BUDGET", cls.hull_budget),
            workers=max(1, _int_env("PARACAT_WORKERS", cls.workers)),
            cross_check=os.environ.get("PARACAT_CROSS_CHECK", "").lower() in _TRUTHY,
            sum_n_max=_int_env("PARACAT_SUM_N_MAX", cls.sum_n_max),
            verify_convexity_n_max=_int_env(
                "PARACAT_VERIFY_CONVEXITY_N_MAX", cls.verify_convexity_n_max
            ),
            verify_count_n_max=_int_env(
                "PARACAT_VERIFY_COUNT_N_MAX", cls.verify_count_n_max
            ),
            log_level=os.environ.get("PARACAT_LOG_LEVEL", cls.log_level).upper(),
        )


def cross_check_enabled() -> bool:
    """Whether pure functions should evaluate their redundant formulations"""
    return os.environ.get("PARACAT_CROSS_CHECK", "").lower() in _TRUTHY
