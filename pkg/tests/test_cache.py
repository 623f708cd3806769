"""Persistent cache round trips and failure modes."""

import json

import pytest

from ducci_lab.cache import CACHE_VERSION, PeriodCache
from ducci_lab.errors import CacheError
from ducci_lab.periods import PeriodRecord, period


def test_round_trip_identity(tmp_path):
    path = tmp_path / "period-cache.json"
    cache = PeriodCache()
    cache.put(period(5, 4))
    cache.put(period(10, 4))
    cache.put(PeriodRecord(7, 3, 6, None, "structural", 0.25, ("empirical-lifting",)))
    cache.store(str(path))
    loaded = PeriodCache.load(str(path))
    assert loaded.entries == cache.entries


def test_get_and_put():
    cache = PeriodCache()
    rec = period(5, 4)
    assert cache.get(5, 4) is None
    cache.put(rec)
    assert cache.get(5, 4) == rec
    assert len(cache) == 1


def test_version_mismatch(tmp_path):
    path = tmp_path / "period-cache.json"
    path.write_text(json.dumps({"version": CACHE_VERSION + 1, "entries": {}}))
    with pytest.raises(CacheError):
        PeriodCache.load(str(path))


def test_corrupt_file_refused(tmp_path):
    path = tmp_path / "period-cache.json"
    path.write_text("{ not json")
    with pytest.raises(CacheError):
        PeriodCache.load(str(path))
    path.write_text(json.dumps({"version": CACHE_VERSION, "entries": {"5:4": {"m": 5}}}))
    with pytest.raises(CacheError):
        PeriodCache.load(str(path))
    path.write_text(json.dumps({"version": CACHE_VERSION, "entries": {"9:9": period(5, 4).to_json_dict()}}))
    with pytest.raises(CacheError):
        PeriodCache.load(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(CacheError):
        PeriodCache.load(str(tmp_path / "absent.json"))


def test_store_replaces_whole_file(tmp_path):
    path = tmp_path / "period-cache.json"
    cache = PeriodCache()
    cache.put(period(5, 4))
    cache.store(str(path))
    first = path.read_text()
    cache.put(period(7, 2))
    cache.store(str(path))
    second = path.read_text()
    assert first != second
    assert len(PeriodCache.load(str(path))) == 2
    leftovers = [p for p in path.parent.iterdir() if p.name.startswith(".period-cache-")]
    assert leftovers == []
