"""Recorded-page storage for offline replay.

Layout: one file per recorded page, named by the hex digest of its URL, body
stored verbatim; ``index.json`` maps normalized queries to the search-page
fixture serving them (file name plus the original search URL, which rank and
provenance reporting need).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from ..textutil import normalize_query

INDEX_NAME = "index.json"


def fixture_key(url: str) -> str:
    return hashlib.sha256(url.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class PageFixture:
    key: str
    url: str
    body: bytes
    fetched_at: float


class FixtureStore:
    """Directory of recorded pages plus a query index for search pages."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def _index(self) -> dict:
        path = self.root / INDEX_NAME
        if not path.exists():
            return {}
        return json.loads(path.read_text(encoding="utf-8"))

    def _write_index(self, index: dict) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        payload = json.dumps(index, indent=2, sort_keys=True)
        (self.root / INDEX_NAME).write_text(payload + "\n", encoding="utf-8")

    def get_page(self, url: str) -> PageFixture | None:
        path = self.root / fixture_key(url)
        if not path.exists():
            return None
        return PageFixture(
            key=fixture_key(url),
            url=url,
            body=path.read_bytes(),
            fetched_at=path.stat().st_mtime,
        )

    def put_page(self, url: str, body: bytes) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.root / fixture_key(url)
        path.write_bytes(body)
        return path

    def get_serp(self, query: str) -> PageFixture | None:
        entry = self._index().get(normalize_query(query))
        if entry is None:
            return None
        path = self.root / entry["file"]
        if not path.exists():
            return None
        return PageFixture(
            key=entry["file"],
            url=entry["url"],
            body=path.read_bytes(),
            fetched_at=path.stat().st_mtime,
        )

    def put_serp(self, query: str, url: str, body: bytes) -> Path:
        path = self.put_page(url, body)
        index = self._index()
        index[normalize_query(query)] = {"file": path.name, "url": url}
        self._write_index(index)
        return path

    def content_hash(self) -> str:
        """Digest of the whole fixture set, for cache keys."""
        if not self.root.exists():
            return "empty"
        digest = hashlib.sha256()
        for path in sorted(self.root.iterdir()):
            if path.is_file():
                digest.update(path.name.encode())
                digest.update(path.read_bytes())
        return digest.hexdigest()
