import json

from config import settings
from utils.cache import CensusStore, SafeTTLCache, cache_stats, census_cache, census_key


def test_safe_ttl_cache_get_or_fetch():
    cache = SafeTTLCache(maxsize=4, ttl=60)
    calls = []

    def fetch(x):
        calls.append(x)
        return x * 2

    assert cache.get_or_fetch("a", fetch, 21) == 42
    assert cache.get_or_fetch("a", fetch, 21) == 42
    assert calls == [21]
    cache.clear()
    assert cache.get("a") is None
    assert len(cache) == 0


def test_get_or_fetch_does_not_memoise_misses():
    cache = SafeTTLCache(maxsize=4, ttl=60)
    calls = []

    def fetch():
        calls.append(1)
        return None

    assert cache.get_or_fetch("a", fetch) is None
    assert cache.get_or_fetch("a", fetch) is None
    assert len(calls) == 2
    assert len(cache) == 0


def test_census_key_includes_version():
    assert census_key(10, "final-below-strict", "9.9") == "census:n10:final-below-strict:v9.9"


def test_store_save_and_load(tmp_path):
    store = CensusStore(str(tmp_path))
    path = store.save(7, "final-below-strict", {"counts": {"official": 1}})
    assert path.name == f"census-n7-final-below-strict-v{settings.APP_VERSION}.json"
    record = store.load(7, "final-below-strict")
    assert record["schema_version"] == settings.CACHE_SCHEMA_VERSION
    assert record["n"] == 7 and record["counts"] == {"official": 1}
    assert "timestamp" in record


def test_store_ignores_corrupt_and_foreign_records(tmp_path):
    store = CensusStore(str(tmp_path))
    store.path_for(8, "x").write_text("{not json", encoding="utf-8")
    assert store.load(8, "x") is None

    store.save(9, "x", {})
    path = store.path_for(9, "x")
    record = json.loads(path.read_text(encoding="utf-8"))
    record["schema_version"] = -1
    path.write_text(json.dumps(record), encoding="utf-8")
    assert store.load(9, "x") is None


def test_store_clear(tmp_path):
    store = CensusStore(str(tmp_path))
    store.save(3, "a", {})
    store.save(4, "a", {})
    assert store.clear() == 2
    assert store.load(3, "a") is None


def test_cache_stats():
    census_cache.set("k", 1)
    assert cache_stats() == {"census_memo_entries": 1}
