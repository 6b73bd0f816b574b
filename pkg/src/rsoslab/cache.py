"""On-disk memoization of computed series.

One JSON document per key, written with an atomic replace so concurrent
writers degrade to last-writer-wins and a crash never leaves a torn file.
The format version is part of the key: bumping it invalidates everything.
Corrupt entries are treated as misses (with a warning) and overwritten by
the next put.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile

from .qseries import QSeries

FORMAT_VERSION = 1


def cache_key(**params) -> dict:
    key = {"format_version": FORMAT_VERSION}
    key.update(params)
    return key


class SeriesCache:
    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, key: dict) -> str:
        blob = json.dumps(key, sort_keys=True, separators=(",", ":"))
        digest = hashlib.sha256(blob.encode()).hexdigest()[:24]
        return os.path.join(self.directory, f"{digest}.json")

    def get(self, key: dict) -> QSeries | None:
        path = self._path(key)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            if doc.get("key") != key:
                return None
            trunc = doc.get("truncation")
            return QSeries.from_pairs(doc["series"], trunc)
        except FileNotFoundError:
            return None
        except (ValueError, KeyError, TypeError) as exc:
            print(f"warning: discarding corrupt cache entry {path}: {exc}",
                  file=sys.stderr)
            return None

    def put(self, key: dict, series: QSeries) -> None:
        path = self._path(key)
        doc = {"key": key, "series": series.to_pairs(),
               "truncation": series.truncation}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
