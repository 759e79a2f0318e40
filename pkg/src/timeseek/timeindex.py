"""Time-coded inverted index with ranked span search and persistence.

Every normalized token of an ingested video becomes one posting carrying
its position and timestamps, so a query answer is a second-accurate spot
in a video, not just a video id.

Scoring
-------
Query and documents share one normalization. Within a video, matched
tokens are grouped into spans: a new span starts when the time gap
between consecutive matched tokens exceeds proximity_window_s. A span's
lexical score is

    sum(idf(t) for t in distinct matched query terms, in query order)
    + adjacency_bonus * (occurrences of query-adjacent term pairs at
                         consecutive token positions in the span)

with idf(t) = ln(1 + V / (1 + df(t))), V the number of indexed videos and
df(t) the number of videos containing t. The final score multiplies in
the engagement boost for (query, video, span start). Hits are ordered by
score descending, ties by (video_id, start_s) ascending. A hit's start is
the first matched token's start minus lead_in_s (clamped at 0) so
playback begins just before the match; its end is the last matched
token's end.

Any change to this formula must update the naive linear-scan oracle in
the test suite in lockstep.

Index file layout (version 1)
-----------------------------
    bytes 0..3    magic b"TSIX"
    bytes 4..7    format version, big-endian uint32
    bytes 8..n-33 UTF-8 JSON payload: normalization flags, per-video
                  token table, term table with postings
    last 32 bytes SHA-256 over everything before it

Bit-exactness is only promised between save and load of the same build.

Concurrency: one writer or many readers. A single lock currently
serializes all access, which trivially satisfies the contract; readers
never observe a partially updated index.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import struct
import threading
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Sequence

from .errors import (
    CorruptIndex,
    DuplicateVideo,
    EmptyQuery,
    InvalidK,
    UnknownVideo,
    UnsupportedVersion,
)
from .segmenter import TimedToken
from .textnorm import DEFAULT_CONFIG, NormalizationConfig, tokenize

FORMAT_MAGIC = b"TSIX"
FORMAT_VERSION = 1
_CHECKSUM_LEN = 32


@dataclass(frozen=True, slots=True)
class TimedPosting:
    video_id: str
    seq: int
    start_s: float
    end_s: float


@dataclass(frozen=True)
class RankingParams:
    proximity_window_s: float = 10.0
    lead_in_s: float = 2.0
    adjacency_bonus: float = 0.25
    feedback_alpha: float = 0.5
    feedback_bucket_s: float = 5.0
    k_default: int = 10


DEFAULT_PARAMS = RankingParams()

# (query_norm, video_id, hit_start_s, params) -> score multiplier
BoostSource = Callable[[str, str, float, RankingParams], float]


@dataclass(frozen=True)
class SearchHit:
    video_id: str
    start_s: float
    end_s: float
    score: float
    snippet: str
    matched_terms: tuple[str, ...]


@dataclass(frozen=True)
class IndexStats:
    video_id: str
    token_count: int
    distinct_terms: int


@dataclass
class _Match:
    seq: int
    start_s: float
    end_s: float
    term: str


class TimeIndex:
    """Inverted index over timed tokens of any number of videos."""

    def __init__(self, config: NormalizationConfig = DEFAULT_CONFIG):
        self._config = config
        self._videos: dict[str, list[TimedToken]] = {}
        self._postings: dict[str, list[TimedPosting]] = {}
        self._df: dict[str, int] = {}
        self._lock = threading.RLock()

    @property
    def config(self) -> NormalizationConfig:
        return self._config

    @property
    def video_count(self) -> int:
        return len(self._videos)

    def video_ids(self) -> list[str]:
        with self._lock:
            return sorted(self._videos)

    def has_video(self, video_id: str) -> bool:
        return video_id in self._videos

    def tokens_for(self, video_id: str) -> list[TimedToken]:
        with self._lock:
            try:
                return list(self._videos[video_id])
            except KeyError:
                raise UnknownVideo(video_id) from None

    def add_document(self, video_id: str, tokens: Sequence[TimedToken]) -> IndexStats:
        """Register a video and index all its tokens' normal forms."""
        with self._lock:
            if video_id in self._videos:
                raise DuplicateVideo(video_id)
            self._videos[video_id] = list(tokens)
            terms_here = set()
            for tok in tokens:
                term = tok.normalized
                terms_here.add(term)
                self._postings.setdefault(term, []).append(
                    TimedPosting(video_id=video_id, seq=tok.seq,
                                 start_s=tok.start_s, end_s=tok.end_s)
                )
            for term in terms_here:
                self._postings[term].sort(key=lambda p: (p.video_id, p.seq))
                self._df[term] = self._df.get(term, 0) + 1
            return IndexStats(video_id=video_id, token_count=len(tokens),
                              distinct_terms=len(terms_here))

    def remove_document(self, video_id: str) -> None:
        with self._lock:
            if video_id not in self._videos:
                raise UnknownVideo(video_id)
            tokens = self._videos.pop(video_id)
            for term in {t.normalized for t in tokens}:
                remaining = [p for p in self._postings[term] if p.video_id != video_id]
                if remaining:
                    self._postings[term] = remaining
                    self._df[term] -= 1
                else:
                    del self._postings[term]
                    del self._df[term]

    def idf(self, term: str) -> float:
        return math.log(1.0 + self.video_count / (1.0 + self._df.get(term, 0)))

    def search(
        self,
        query: str,
        k: int | None = None,
        params: RankingParams = DEFAULT_PARAMS,
        boost_source: BoostSource | None = None,
    ) -> list[SearchHit]:
        """Ranked span search; see the module docstring for the formula."""
        if k is None:
            k = params.k_default
        if k < 1:
            raise InvalidK(f"k must be >= 1, got {k}")
        qtokens = [t.normalized for t in tokenize(query, self._config)]
        if not qtokens:
            raise EmptyQuery("query normalizes to no tokens")

        with self._lock:
            # Distinct terms in query order; term order fixes the float
            # summation order so results are reproducible.
            qterms: list[str] = []
            for t in qtokens:
                if t not in qterms:
                    qterms.append(t)
            qpairs = {(qtokens[i], qtokens[i + 1]) for i in range(len(qtokens) - 1)}

            by_video: dict[str, list[_Match]] = {}
            for term in qterms:
                for p in self._postings.get(term, ()):
                    by_video.setdefault(p.video_id, []).append(
                        _Match(seq=p.seq, start_s=p.start_s, end_s=p.end_s, term=term)
                    )

            query_norm = " ".join(qtokens)
            hits: list[SearchHit] = []
            for video_id, matches in by_video.items():
                matches.sort(key=lambda m: m.seq)
                for span in _split_spans(matches, params.proximity_window_s):
                    hits.append(self._score_span(
                        video_id, span, qterms, qpairs, query_norm, params, boost_source
                    ))

            hits.sort(key=lambda h: (-h.score, h.video_id, h.start_s))
            return hits[:k]

    def _score_span(
        self,
        video_id: str,
        span: list[_Match],
        qterms: list[str],
        qpairs: set[tuple[str, str]],
        query_norm: str,
        params: RankingParams,
        boost_source: BoostSource | None,
    ) -> SearchHit:
        present = {m.term for m in span}
        matched = tuple(t for t in qterms if t in present)
        lexical = sum(self.idf(t) for t in matched)
        adjacent = sum(
            1
            for a, b in zip(span, span[1:])
            if b.seq == a.seq + 1 and (a.term, b.term) in qpairs
        )
        lexical += params.adjacency_bonus * adjacent

        start_s = max(0.0, span[0].start_s - params.lead_in_s)
        end_s = span[-1].end_s
        boost = 1.0
        if boost_source is not None:
            boost = boost_source(query_norm, video_id, start_s, params)
        return SearchHit(
            video_id=video_id,
            start_s=start_s,
            end_s=end_s,
            score=lexical * boost,
            snippet=self.snippet(video_id, start_s, end_s),
            matched_terms=matched,
        )

    def snippet(self, video_id: str, t0: float, t1: float,
                context_tokens: int = 5) -> str:
        """Surfaces of tokens overlapping [t0, t1] plus up to
        context_tokens on each side, joined by single spaces."""
        with self._lock:
            try:
                tokens = self._videos[video_id]
            except KeyError:
                raise UnknownVideo(video_id) from None
            # tokens are half-open [start, end): a word ending exactly at t0
            # is already over and does not overlap
            overlapping = [
                i for i, tok in enumerate(tokens)
                if tok.end_s > t0 and tok.start_s <= t1
            ]
            if not overlapping:
                return ""
            lo = max(0, overlapping[0] - context_tokens)
            hi = min(len(tokens), overlapping[-1] + 1 + context_tokens)
            return " ".join(tok.surface for tok in tokens[lo:hi])

    # -- persistence ------------------------------------------------------

    def save(self, path: str | Path) -> None:
        """Write the versioned, checksummed index file atomically."""
        with self._lock:
            payload = json.dumps(
                {
                    "normalization": asdict(self._config),
                    "videos": {
                        vid: [[t.surface, t.normalized, t.start_s, t.end_s, t.seq]
                              for t in toks]
                        for vid, toks in self._videos.items()
                    },
                    "terms": {
                        term: [[p.video_id, p.seq, p.start_s, p.end_s] for p in plist]
                        for term, plist in self._postings.items()
                    },
                },
                ensure_ascii=False,
                sort_keys=True,
            ).encode("utf-8")
        head = FORMAT_MAGIC + struct.pack(">I", FORMAT_VERSION)
        digest = hashlib.sha256(head + payload).digest()
        path = Path(path)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_bytes(head + payload + digest)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | Path) -> "TimeIndex":
        """Load a saved index; answers every search exactly as the saved one."""
        blob = Path(path).read_bytes()
        if len(blob) < len(FORMAT_MAGIC) + 4 + _CHECKSUM_LEN:
            raise CorruptIndex("file too short")
        if blob[: len(FORMAT_MAGIC)] != FORMAT_MAGIC:
            raise CorruptIndex("bad magic bytes")
        (version,) = struct.unpack(">I", blob[len(FORMAT_MAGIC): len(FORMAT_MAGIC) + 4])
        if version != FORMAT_VERSION:
            raise UnsupportedVersion(f"format version {version}, expected {FORMAT_VERSION}")
        body, digest = blob[:-_CHECKSUM_LEN], blob[-_CHECKSUM_LEN:]
        if hashlib.sha256(body).digest() != digest:
            raise CorruptIndex("checksum mismatch")
        try:
            data = json.loads(body[len(FORMAT_MAGIC) + 4:].decode("utf-8"))
            index = cls(NormalizationConfig(**data["normalization"]))
            for vid, rows in data["videos"].items():
                index._videos[vid] = [
                    TimedToken(surface=r[0], normalized=r[1], start_s=r[2],
                               end_s=r[3], video_id=vid, seq=r[4])
                    for r in rows
                ]
            for term, rows in data["terms"].items():
                index._postings[term] = [
                    TimedPosting(video_id=r[0], seq=r[1], start_s=r[2], end_s=r[3])
                    for r in rows
                ]
                index._df[term] = len({r[0] for r in rows})
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise CorruptIndex(f"malformed payload: {exc}") from exc
        return index


def _split_spans(matches: list[_Match], proximity_window_s: float) -> list[list[_Match]]:
    """Group seq-sorted matches into spans by time proximity."""
    spans: list[list[_Match]] = []
    current: list[_Match] = []
    for m in matches:
        if current and m.start_s - current[-1].end_s > proximity_window_s:
            spans.append(current)
            current = []
        current.append(m)
    if current:
        spans.append(current)
    return spans
