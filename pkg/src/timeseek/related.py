"""Related-resource providers: more reading for the same query.

A search answer can point beyond the indexed videos, e.g. to a local
corpus of interpretation texts covering the same meaning. Providers are
pluggable; the one shipped here ranks UTF-8 text documents from a local
directory using the same index machinery as the video search, with
token position standing in for time. No scraping of live websites.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

from .errors import EmptyQuery
from .segmenter import TimedToken
from .textnorm import DEFAULT_CONFIG, NormalizationConfig, tokenize
from .timeindex import RankingParams, TimeIndex


@dataclass(frozen=True)
class RelatedResource:
    source: str
    title: str
    locator: str
    snippet: str
    score: float


class RelatedProvider(Protocol):
    name: str

    def related(self, query: str, limit: int = 5) -> list[RelatedResource]:
        ...


class LocalCorpusProvider:
    """Ranks the *.txt documents of a directory against the query.

    Each document is tokenized once at construction; token i is given the
    synthetic interval [i, i+1) so span grouping and scoring work exactly
    as for transcripts. One resource is returned per document (its best
    span), ordered by score descending.
    """

    name = "local-corpus"

    def __init__(self, corpus_dir: str | Path,
                 config: NormalizationConfig = DEFAULT_CONFIG):
        self._dir = Path(corpus_dir)
        self._index = TimeIndex(config)
        for doc in sorted(self._dir.glob("*.txt")):
            text = doc.read_text(encoding="utf-8")
            tokens = [
                TimedToken(surface=t.surface, normalized=t.normalized,
                           start_s=float(i), end_s=float(i + 1),
                           video_id=doc.name, seq=i)
                for i, t in enumerate(tokenize(text, config))
            ]
            self._index.add_document(doc.name, tokens)

    @property
    def document_count(self) -> int:
        return self._index.video_count

    def related(self, query: str, limit: int = 5) -> list[RelatedResource]:
        try:
            # Over-fetch so the per-document dedup below can still fill `limit`.
            hits = self._index.search(query, k=max(limit * 4, limit),
                                      params=RankingParams(proximity_window_s=30.0))
        except EmptyQuery:
            return []
        resources: list[RelatedResource] = []
        seen: set[str] = set()
        for hit in hits:
            if hit.video_id in seen:
                continue
            seen.add(hit.video_id)
            resources.append(RelatedResource(
                source=self.name,
                title=Path(hit.video_id).stem,
                locator=str(self._dir / hit.video_id),
                snippet=hit.snippet,
                score=hit.score,
            ))
            if len(resources) == limit:
                break
        return resources
