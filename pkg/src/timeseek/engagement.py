"""User feedback and time-anchored comments, and the ranking boost.

Feedback is a +1/-1 vote that a (query, video, moment) really is the
best spot for that query. Votes are quantized into time buckets of
feedback_bucket_s so small disagreements about the exact second still
pile up on one key, and a client can hold at most one vote per
(query, video, bucket): re-voting overwrites. Comments anchor to whole
seconds.

The boost consumed by search is

    1 + feedback_alpha * ln(1 + max(0, net votes))

summed over records of the same normalized query and video whose bucket
is within one of the hit's bucket. Negative net totals clamp to zero, so
hostile voting can neutralize a boost but never push a hit below its
lexical score.

Both stores persist as append-only JSONL logs and are rebuilt by replay;
compact() rewrites the feedback log without superseded votes.
"""

from __future__ import annotations

import json
import math
import threading
import time
import uuid
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Iterable

from .errors import (
    EmptyBody,
    EmptyQuery,
    InvalidVote,
    TimestampOutOfRange,
    UnknownVideo,
)
from .textnorm import DEFAULT_CONFIG, NormalizationConfig, normalize_query
from .timeindex import DEFAULT_PARAMS, RankingParams


@dataclass(frozen=True)
class FeedbackRecord:
    id: str
    query_norm: str
    video_id: str
    bucket: int
    vote: int
    client_id: str
    created_at: float


@dataclass(frozen=True)
class Comment:
    id: str
    video_id: str
    second: int
    body: str
    link: str | None
    client_id: str
    created_at: float


# Returns the video duration in seconds, or None when the id is unknown.
DurationLookup = Callable[[str], "float | None"]


class EngagementStore:
    """Feedback votes and per-second comments for indexed videos."""

    def __init__(
        self,
        *,
        duration_of: DurationLookup,
        feedback_log: str | Path | None = None,
        comments_log: str | Path | None = None,
        params: RankingParams = DEFAULT_PARAMS,
        config: NormalizationConfig = DEFAULT_CONFIG,
    ) -> None:
        self._duration_of = duration_of
        self._params = params
        self._config = config
        self._lock = threading.RLock()
        # (client_id, query_norm, video_id, bucket) -> FeedbackRecord
        self._feedback: dict[tuple[str, str, str, int], FeedbackRecord] = {}
        self._comments: dict[str, list[Comment]] = {}
        self._feedback_log = Path(feedback_log) if feedback_log else None
        self._comments_log = Path(comments_log) if comments_log else None
        self._replay()

    # -- feedback ----------------------------------------------------------

    def record_feedback(self, query: str, video_id: str, timestamp_s: float,
                        vote: int, client_id: str) -> str:
        """Record (or overwrite) one client's vote; returns the record id."""
        if vote not in (1, -1):
            raise InvalidVote(f"vote must be +1 or -1, got {vote}")
        duration = self._duration_of(video_id)
        if duration is None:
            raise UnknownVideo(video_id)
        if timestamp_s < 0 or timestamp_s > duration:
            raise TimestampOutOfRange(
                f"timestamp {timestamp_s} outside [0, {duration}]"
            )
        query_norm = normalize_query(query, self._config)
        if not query_norm:
            raise EmptyQuery("feedback query normalizes to no tokens")
        bucket = math.floor(timestamp_s / self._params.feedback_bucket_s)
        record = FeedbackRecord(
            id=uuid.uuid4().hex,
            query_norm=query_norm,
            video_id=video_id,
            bucket=bucket,
            vote=vote,
            client_id=client_id,
            created_at=time.time(),
        )
        with self._lock:
            self._feedback[(client_id, query_norm, video_id, bucket)] = record
            self._append(self._feedback_log, asdict(record))
        return record.id

    def boost_for(self, query_norm: str, video_id: str, hit_start_s: float,
                  params: RankingParams = DEFAULT_PARAMS) -> float:
        """Score multiplier for a hit; exactly 1.0 without matching feedback."""
        bucket = math.floor(hit_start_s / params.feedback_bucket_s)
        with self._lock:
            net = sum(
                r.vote
                for r in self._feedback.values()
                if r.query_norm == query_norm
                and r.video_id == video_id
                and abs(r.bucket - bucket) <= 1
            )
        positive = max(0, net)
        return 1.0 + params.feedback_alpha * math.log1p(positive)

    def feedback_records(self) -> list[FeedbackRecord]:
        with self._lock:
            return sorted(self._feedback.values(), key=lambda r: r.created_at)

    # -- comments ----------------------------------------------------------

    def add_comment(self, video_id: str, timestamp_s: float, body: str,
                    link: str | None = None, client_id: str = "") -> str:
        """Anchor a comment at floor(timestamp_s); returns the comment id."""
        if self._duration_of(video_id) is None:
            raise UnknownVideo(video_id)
        body = body.strip()
        if not body:
            raise EmptyBody("comment body is empty")
        if timestamp_s < 0:
            raise TimestampOutOfRange(f"timestamp {timestamp_s} is negative")
        comment = Comment(
            id=uuid.uuid4().hex,
            video_id=video_id,
            second=math.floor(timestamp_s),
            body=body,
            link=link,
            client_id=client_id,
            created_at=time.time(),
        )
        with self._lock:
            self._comments.setdefault(video_id, []).append(comment)
            self._append(self._comments_log, asdict(comment))
        return comment.id

    def comments_in_range(self, video_id: str, t0: float, t1: float) -> list[Comment]:
        """Comments with t0 <= second <= t1, ordered by (second, created_at)."""
        if self._duration_of(video_id) is None:
            raise UnknownVideo(video_id)
        if t0 > t1:
            raise ValueError(f"t0 {t0} > t1 {t1}")
        with self._lock:
            rows = self._comments.get(video_id, [])
            # insertion order breaks created_at ties (sort is stable)
            return sorted(
                (c for c in rows if t0 <= c.second <= t1),
                key=lambda c: (c.second, c.created_at),
            )

    def comment_count(self, video_id: str) -> int:
        with self._lock:
            return len(self._comments.get(video_id, []))

    # -- persistence -------------------------------------------------------

    def compact(self) -> None:
        """Rewrite the feedback log keeping only the live (non-overwritten)
        vote per key."""
        if self._feedback_log is None:
            return
        with self._lock:
            records = sorted(self._feedback.values(), key=lambda r: r.created_at)
            tmp = self._feedback_log.with_suffix(self._feedback_log.suffix + ".tmp")
            with tmp.open("w", encoding="utf-8") as fh:
                for r in records:
                    fh.write(json.dumps(asdict(r), ensure_ascii=False) + "\n")
            tmp.replace(self._feedback_log)

    def _append(self, log: Path | None, record: dict) -> None:
        if log is None:
            return
        with log.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")

    def _replay(self) -> None:
        if self._feedback_log is not None and self._feedback_log.exists():
            for row in _read_jsonl(self._feedback_log):
                record = FeedbackRecord(**row)
                key = (record.client_id, record.query_norm, record.video_id, record.bucket)
                self._feedback[key] = record  # later lines win
        if self._comments_log is not None and self._comments_log.exists():
            for row in _read_jsonl(self._comments_log):
                comment = Comment(**row)
                self._comments.setdefault(comment.video_id, []).append(comment)


def _read_jsonl(path: Path) -> Iterable[dict]:
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)
