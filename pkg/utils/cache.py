"""
ChainCensus — Census Caches
SafeTTLCache wraps cachetools.TTLCache with a threading.Lock for the
in-process memo; CensusStore persists census records as JSON files so
table sweeps do not recount the same interval twice.
"""

import json
import os
import threading
import datetime
from pathlib import Path
from typing import Any, Callable, Optional
from cachetools import TTLCache

from config import settings
from utils.logger import get_logger

log = get_logger(__name__)


class SafeTTLCache:
    """Thread-safe TTL cache."""

    def __init__(self, maxsize: int = 128, ttl: int = 30):
        self._cache = TTLCache(maxsize=maxsize, ttl=ttl)
        self._lock = threading.Lock()

    def get(self, key: str) -> Any | None:
        with self._lock:
            return self._cache.get(key)

    def set(self, key: str, value: Any) -> None:
        with self._lock:
            self._cache[key] = value

    def get_or_fetch(
        self,
        key: str,
        fetch_fn: Callable,
        *args,
        **kwargs,
    ) -> Any:
        """Return cached value or call fetch_fn, cache the result, and return it."""
        cached = self.get(key)
        if cached is not None:
            return cached
        result = fetch_fn(*args, **kwargs)
        if result is not None:
            self.set(key, result)
        return result

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)


# Module-level shared memo for census reports
census_cache = SafeTTLCache(maxsize=256, ttl=settings.CACHE_TTL_CENSUS)


def census_key(n: int, token: str, version: str = settings.APP_VERSION) -> str:
    return f"census:n{n}:{token}:v{version}"


# ── On-disk store ────────────────────────────────────────────────────────────

class CensusStore:
    """
    JSON file cache for census records.

    One file per (n, predicate token, tool version). Records that fail to
    parse, or carry another schema version, are treated as misses.
    """

    def __init__(self, cache_dir: Optional[str] = None, version: str = settings.APP_VERSION):
        self.cache_dir = Path(cache_dir or settings.CACHE_DIR)
        self.version = version

    def path_for(self, n: int, token: str) -> Path:
        return self.cache_dir / f"census-n{n}-{token}-v{self.version}.json"

    def load(self, n: int, token: str) -> Optional[dict]:
        path = self.path_for(n, token)
        if not path.exists():
            log.debug("Cache miss: {}", path.name)
            return None
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            log.warning("Ignoring unreadable cache file {}: {}", path, e)
            return None
        if record.get("schema_version") != settings.CACHE_SCHEMA_VERSION or record.get("tool_version") != self.version:
            log.warning("Ignoring cache file {} with foreign schema/version", path.name)
            return None
        log.debug("Cache hit: {}", path.name)
        return record

    def save(self, n: int, token: str, payload: dict) -> Path:
        record = {
            "schema_version": settings.CACHE_SCHEMA_VERSION,
            "n": n,
            "predicate": token,
            **payload,
            "tool_version": self.version,
            "timestamp": datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
        }
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = self.path_for(n, token)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(record, indent=2, sort_keys=True), encoding="utf-8")
        os.replace(tmp, path)
        log.debug("Cached census record {}", path.name)
        return path

    def clear(self) -> int:
        if not self.cache_dir.exists():
            return 0
        removed = 0
        for path in self.cache_dir.glob("census-n*.json"):
            path.unlink()
            removed += 1
        return removed


def cache_stats() -> dict:
    return {"census_memo_entries": len(census_cache)}
