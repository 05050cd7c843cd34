"""
ChainCensus — Central Configuration
Guards, cache location, census tuning, suite defaults and the published
reference tables all live here. Override any key through the environment
or a local .env file.
"""

import os
from dotenv import load_dotenv

load_dotenv()


# ── Environment helpers ──────────────────────────────────────────────────────
def _get_setting(key: str, fallback: str = "") -> str:
    """Read from the environment (after .env is loaded), then fallback."""
    return os.getenv(key, fallback)


def _get_bool_setting(key: str, fallback: bool = False) -> bool:
    """Read a boolean env var."""
    val = _get_setting(key, str(fallback))
    return val.lower() in ("true", "1", "yes")


def _get_int_setting(key: str, fallback: int) -> int:
    val = _get_setting(key, str(fallback))
    try:
        return int(val)
    except ValueError:
        return fallback


# ── Logging ──────────────────────────────────────────────────────────────────
LOG_LEVEL: str = _get_setting("LOG_LEVEL", "INFO")
LOG_FILE: str = _get_setting("LOG_FILE", "")

# ── Cache ────────────────────────────────────────────────────────────────────
CACHE_DIR_ENV = "CHAINCENSUS_CACHE_DIR"
CACHE_DIR: str = _get_setting(CACHE_DIR_ENV, os.path.join(os.path.expanduser("~"), ".cache", "chaincensus"))
CACHE_ENABLED: bool = _get_bool_setting("CACHE_ENABLED", True)
CACHE_SCHEMA_VERSION = 1
CACHE_TTL_CENSUS = 3600  # seconds, in-process memo only

# ── Guards ───────────────────────────────────────────────────────────────────
CENSUS_MIN_N = 3
CENSUS_MAX_N: int = _get_int_setting("CENSUS_MAX_N", 26)
FORMULA_MIN_N = 3
FORMULA_MAX_N: int = _get_int_setting("FORMULA_MAX_N", 200)
GENERATIVE_MIN_N = 7

# ── Census tuning ────────────────────────────────────────────────────────────
CENSUS_THREADS: int = _get_int_setting("CENSUS_THREADS", os.cpu_count() or 1)
CENSUS_CHUNK_SIZE: int = _get_int_setting("CENSUS_CHUNK_SIZE", 1 << 20)
DEFAULT_PREDICATE: str = _get_setting("DEFAULT_PREDICATE", "final-below-strict")

# Scalar trajectories use Python ints capped at 2**VALUE_BITS;
# the vectorised kernels run in int64 and refuse values at or above 2**61.
VALUE_BITS = 128
KERNEL_VALUE_LIMIT = 1 << 61

# ── Property suites ──────────────────────────────────────────────────────────
THEOREM1_TRIALS: int = _get_int_setting("THEOREM1_TRIALS", 10_000)
THEOREM1_MAX_Z: int = _get_int_setting("THEOREM1_MAX_Z", 30)
THEOREM2_MAX_N: int = _get_int_setting("THEOREM2_MAX_N", 16)
GAMMA_ORACLE_MAX_N: int = _get_int_setting("GAMMA_ORACLE_MAX_N", 20)
DEFAULT_SEED = 20240601

# ── Output ───────────────────────────────────────────────────────────────────
RATIO_DIGITS = 12
SVG_WIDTH = 800
SVG_HEIGHT = 500
SERIES_COLORS = ["#1f6feb", "#f85149", "#3fb950", "#d29922", "#8957e5", "#58a6ff"]
APP_VERSION = "1.0.0"

# ── Published reference tables (n = 3..25) ───────────────────────────────────
REFERENCE_GAMMA: dict[int, int] = {
    3: 1, 4: 2, 5: 6, 6: 17, 7: 34, 8: 77, 9: 177, 10: 354, 11: 751,
    12: 1502, 13: 3117, 14: 6565, 15: 13130, 16: 26958, 17: 55882,
    18: 111764, 19: 227600, 20: 455200, 21: 921833, 22: 1878800,
    23: 3757600, 24: 7593367, 25: 15415312,
}

REFERENCE_GAMMA_PLUS_T: dict[int, int] = {
    3: 1, 4: 3, 5: 9, 6: 17, 7: 40, 8: 85, 9: 178, 10: 385, 11: 792,
    12: 1624, 13: 3372, 14: 6822, 15: 13946, 16: 28370, 17: 57256,
    18: 116579, 19: 234910, 20: 473325, 21: 959987, 22: 1926862,
    23: 3880688, 24: 7818474, 25: 15687824,
}

REFERENCE_DELTA: dict[int, int] = {
    3: 0, 4: 0, 5: 0, 6: 0, 7: 1, 8: 1, 9: 1, 10: 8, 11: 9, 12: 43,
    13: 53, 14: 64, 15: 261, 16: 337, 17: 426, 18: 1580, 19: 2109,
    20: 6949, 21: 9705, 22: 13242, 23: 42398, 24: 60109, 25: 83390,
}

REFERENCE_T: dict[int, int] = {
    3: 0, 4: 1, 5: 3, 6: 0, 7: 6, 8: 8, 9: 1, 10: 31, 11: 41, 12: 122,
    13: 255, 14: 257, 15: 816, 16: 1412, 17: 1374, 18: 4815, 19: 7310,
    20: 18125, 21: 38154, 22: 48062, 23: 123088, 24: 225107, 25: 272512,
}
