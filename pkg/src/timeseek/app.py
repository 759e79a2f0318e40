"""The application core shared by the CLI and the HTTP service.

Owns the index, the engagement store, the query log, the related-corpus
provider, and the video catalog, and wires them together so both entry
points run the identical code path.

Data directory layout:

    index.tsix     saved index snapshot (written after every ingest)
    videos.json    catalog: duration, media locator, audio facts per video
    feedback.log   append-only feedback records, one JSON object per line
    comments.log   append-only comments
    queries.log    append-only query log
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, replace
from pathlib import Path

from .audio import load_audio_meta, validate_audio
from .config import AppConfig
from .engagement import Comment, EngagementStore
from .errors import EmptyQuery, InvalidAudio, InvalidK
from .querylog import QueryLog, QueryLogEntry
from .related import LocalCorpusProvider, RelatedProvider, RelatedResource
from .segmenter import merge_windows, plan_windows
from .textnorm import normalize_query
from .timeindex import SearchHit, TimeIndex
from .transcribe import (
    BackendRegistry,
    SidecarMockBackend,
    TranscriberBackend,
    parse_sidecar,
    transcribe,
)

log = logging.getLogger(__name__)

INDEX_FILENAME = "index.tsix"
CATALOG_FILENAME = "videos.json"
FEEDBACK_LOG = "feedback.log"
COMMENTS_LOG = "comments.log"
QUERIES_LOG = "queries.log"

MOCK_BACKEND_ID = "mock"


@dataclass(frozen=True)
class IngestReport:
    video_id: str
    token_count: int
    warnings: tuple[str, ...]


@dataclass(frozen=True)
class EnrichedHit:
    hit: SearchHit
    comments: list[Comment]
    media_ref: str | None


@dataclass(frozen=True)
class SearchResult:
    query_norm: str
    hits: list[EnrichedHit]
    related: list[RelatedResource]


class SearchApp:
    """Everything behind one data directory."""

    def __init__(self, config: AppConfig, *,
                 backends: list[TranscriberBackend] | None = None):
        self.config = config
        self.data_dir = Path(config.data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)

        index_path = self.data_dir / INDEX_FILENAME
        if index_path.exists():
            # the snapshot's normalization wins over the file config so
            # query keys stay consistent with what was indexed
            self.index = TimeIndex.load(index_path)
        else:
            self.index = TimeIndex(config.normalization)
        self.normalization = self.index.config

        self.catalog: dict[str, dict] = {}
        catalog_path = self.data_dir / CATALOG_FILENAME
        if catalog_path.exists():
            self.catalog = json.loads(catalog_path.read_text(encoding="utf-8"))

        self.engagement = EngagementStore(
            duration_of=self.video_duration,
            feedback_log=self.data_dir / FEEDBACK_LOG,
            comments_log=self.data_dir / COMMENTS_LOG,
            params=config.ranking,
            config=self.normalization,
        )
        self.query_log = QueryLog(self.data_dir / QUERIES_LOG)

        self.registry = BackendRegistry()
        for backend in backends or []:
            self.registry.register(backend)

        self.related_provider: RelatedProvider | None = None
        if config.related_corpus_dir:
            self.related_provider = LocalCorpusProvider(
                config.related_corpus_dir, self.normalization
            )

    # -- catalog -----------------------------------------------------------

    def video_duration(self, video_id: str) -> float | None:
        entry = self.catalog.get(video_id)
        return None if entry is None else float(entry["duration_s"])

    def media_ref(self, video_id: str) -> str | None:
        entry = self.catalog.get(video_id)
        return None if entry is None else entry.get("media_ref")

    def _save_catalog(self) -> None:
        path = self.data_dir / CATALOG_FILENAME
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(self.catalog, ensure_ascii=False, indent=2),
                       encoding="utf-8")
        tmp.replace(path)

    # -- ingest ------------------------------------------------------------

    def ingest(self, video_id: str, media_ref: str, sidecar_ref: str,
               window_s: float | None = None,
               overlap_s: float | None = None) -> IngestReport:
        """Run the full pipeline: validate audio, plan windows, transcribe,
        merge, index, snapshot."""
        meta = load_audio_meta(media_ref)
        sidecar_words = parse_sidecar(Path(sidecar_ref))

        report = validate_audio(meta)
        if report.errors:
            raise InvalidAudio("; ".join(e.message for e in report.errors))

        windows = plan_windows(
            meta.duration_s,
            self.config.window_s if window_s is None else window_s,
            self.config.overlap_s if overlap_s is None else overlap_s,
        )

        backend: TranscriberBackend
        if self.config.backend == MOCK_BACKEND_ID and MOCK_BACKEND_ID not in self.registry:
            backend = SidecarMockBackend(sidecar_words)
        else:
            backend = self.registry.get(self.config.backend)

        segments = []
        for window in windows:
            segment = transcribe(media_ref, window, backend,
                                 config=self.normalization)
            segments.append((window, segment.words))
        merged = merge_windows(segments)
        tokens = [replace(t, video_id=video_id) for t in merged]

        stats = self.index.add_document(video_id, tokens)
        self.catalog[video_id] = {
            "media_ref": media_ref,
            "sidecar_ref": sidecar_ref,
            "duration_s": meta.duration_s,
            "sample_rate_hz": meta.sample_rate_hz,
            "channels": meta.channels,
            "ingested_at": time.time(),
        }
        self._save_catalog()
        self.index.save(self.data_dir / INDEX_FILENAME)
        return IngestReport(
            video_id=video_id,
            token_count=stats.token_count,
            warnings=tuple(w.code for w in report.warnings),
        )

    # -- search ------------------------------------------------------------

    def search(self, query: str, k: int | None = None,
               client_id: str = "") -> SearchResult:
        """Search, enrich hits with comments and related resources, and log
        the request. Exactly one log entry is appended per call, also when
        the query is rejected."""
        query_norm = normalize_query(query, self.normalization)
        try:
            hits = self.index.search(query, k, self.config.ranking,
                                     boost_source=self.engagement.boost_for)
        except (EmptyQuery, InvalidK):
            self._log_query(query, query_norm, [], client_id, rejected=True)
            raise

        enriched = [
            EnrichedHit(
                hit=hit,
                comments=self.engagement.comments_in_range(
                    hit.video_id, hit.start_s, hit.end_s),
                media_ref=self.media_ref(hit.video_id),
            )
            for hit in hits
        ]
        related = self.fetch_related(query)
        self._log_query(query, query_norm, hits, client_id, rejected=False)
        return SearchResult(query_norm=query_norm, hits=enriched, related=related)

    def fetch_related(self, query: str) -> list[RelatedResource]:
        """Related resources for the query; degrades to [] on provider
        failure (search must never fail because enrichment failed)."""
        if self.related_provider is None:
            return []
        try:
            return self.related_provider.related(query)
        except Exception:
            log.warning("related-resource provider failed for %r", query, exc_info=True)
            return []

    def _log_query(self, raw: str, norm: str, hits: list[SearchHit],
                   client_id: str, rejected: bool) -> None:
        self.query_log.append(QueryLogEntry(
            query_raw=raw,
            query_norm=norm,
            result_count=len(hits),
            top_video_id=hits[0].video_id if hits else None,
            at=time.time(),
            client_id=client_id,
            rejected=rejected,
        ))

    # -- engagement / analytics passthrough ---------------------------------

    def record_feedback(self, query: str, video_id: str, timestamp_s: float,
                        vote: int, client_id: str) -> str:
        return self.engagement.record_feedback(query, video_id, timestamp_s,
                                               vote, client_id)

    def add_comment(self, video_id: str, timestamp_s: float, body: str,
                    link: str | None = None, client_id: str = "") -> str:
        return self.engagement.add_comment(video_id, timestamp_s, body,
                                           link, client_id)

    def comments_in_range(self, video_id: str, t0: float, t1: float) -> list[Comment]:
        return self.engagement.comments_in_range(video_id, t0, t1)

    def top_queries(self, n: int, since: float | None = None) -> list[tuple[str, int]]:
        return self.query_log.top_queries(n, since)
