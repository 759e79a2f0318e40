"""Append-only query log and the trend aggregation over it.

Exactly one entry is appended per search request, including requests
rejected for an empty-normalizing query or a bad k: failed intents are
part of the trend picture. Entries rejected that way carry rejected=True
and a result_count of 0.
"""

from __future__ import annotations

import json
import threading
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path

from .errors import InvalidN


@dataclass(frozen=True)
class QueryLogEntry:
    query_raw: str
    query_norm: str
    result_count: int
    top_video_id: str | None
    at: float
    client_id: str
    rejected: bool = False


class QueryLog:
    """JSONL-backed log; pass path=None for an in-memory log."""

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path else None
        self._entries: list[QueryLogEntry] = []
        self._lock = threading.Lock()
        if self._path is not None and self._path.exists():
            with self._path.open("r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        self._entries.append(QueryLogEntry(**json.loads(line)))

    def append(self, entry: QueryLogEntry) -> None:
        with self._lock:
            self._entries.append(entry)
            if self._path is not None:
                with self._path.open("a", encoding="utf-8") as fh:
                    fh.write(json.dumps(asdict(entry), ensure_ascii=False) + "\n")

    def __len__(self) -> int:
        return len(self._entries)

    def entries(self, since: float | None = None) -> list[QueryLogEntry]:
        with self._lock:
            if since is None:
                return list(self._entries)
            return [e for e in self._entries if e.at >= since]

    def top_queries(self, n: int, since: float | None = None) -> list[tuple[str, int]]:
        """Most frequent normalized queries, count descending, ties by
        query_norm ascending."""
        if n < 1:
            raise InvalidN(f"n must be >= 1, got {n}")
        counts = Counter(e.query_norm for e in self.entries(since))
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return ranked[:n]
