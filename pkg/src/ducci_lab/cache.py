"""Persistent period cache: one JSON document, replaced atomically on write."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field

from .errors import CacheError
from .periods import PeriodRecord, record_from_dict

CACHE_VERSION = 1


@dataclass
class PeriodCache:
    """Map from (m, n) to a period record.

    Values are deterministic, so concurrent writers can only collide on
    identical content; readers of the file always see a complete document
    because stores go through a temp file and an atomic rename.
    """

    entries: dict[tuple[int, int], PeriodRecord] = field(default_factory=dict)

    def get(self, m: int, n: int) -> PeriodRecord | None:
        return self.entries.get((m, n))

    def put(self, record: PeriodRecord) -> None:
        self.entries[(record.m, record.n)] = record

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def load(cls, path: str) -> "PeriodCache":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise CacheError(f"cannot read cache file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise CacheError(f"cache file {path} is corrupt: {exc}") from exc
        if not isinstance(doc, dict) or doc.get("version") != CACHE_VERSION:
            raise CacheError(
                f"cache file {path} has version {doc.get('version')!r}, "
                f"expected {CACHE_VERSION}"
            )
        cache = cls()
        try:
            for key, payload in doc["entries"].items():
                m_text, n_text = key.split(":")
                record = record_from_dict(payload)
                if (record.m, record.n) != (int(m_text), int(n_text)):
                    raise CacheError(f"entry key {key} disagrees with its record")
                cache.put(record)
        except (KeyError, ValueError, TypeError) as exc:
            raise CacheError(f"cache file {path} is corrupt: {exc}") from exc
        return cache

    def store(self, path: str) -> None:
        doc = {
            "version": CACHE_VERSION,
            "entries": {
                f"{m}:{n}": {**rec.to_json_dict(), "elapsed": rec.elapsed}
                for (m, n), rec in sorted(self.entries.items())
            },
        }
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp_path = tempfile.mkstemp(prefix=".period-cache-", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=1)
                fh.write("\n")
            os.replace(tmp_path, path)
        except OSError as exc:
            try:
                os.unlink(tmp_path)
            except OSError:
                pass
            raise CacheError(f"cannot write cache file {path}: {exc}") from exc
