"""HTTP facade over the application core. All endpoints speak JSON and
live under /v1.

    POST /v1/videos                        ingest -> 201 report
    GET  /v1/search?q=&k=&client=          -> 200 SearchResponse
    POST /v1/feedback                      -> 201 {id}
    POST /v1/comments                      -> 201 {id}
    GET  /v1/videos/{id}/comments?from=&to=  -> 200 list
    GET  /v1/analytics/top-queries?n=&since= -> 200 list
    GET  /v1/related?q=                    -> 200 list
    GET  /v1/healthz                       -> 200

Error mapping: bad query/k -> 400, unknown video/backend -> 404,
duplicate video -> 409, unreadable or invalid input files and invalid
field values -> 422.
"""

from __future__ import annotations

from dataclasses import asdict
from datetime import datetime

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import errors
from .app import EnrichedHit, SearchApp
from .config import AppConfig

_STATUS_BY_ERROR: list[tuple[type[Exception], int]] = [
    (errors.EmptyQuery, 400),
    (errors.InvalidK, 400),
    (errors.InvalidN, 400),
    (errors.ConfigError, 400),
    (errors.UnknownVideo, 404),
    (errors.UnknownBackend, 404),
    (errors.DuplicateVideo, 409),
    (errors.SidecarParseError, 422),
    (errors.MediaParseError, 422),
    (errors.InvalidAudio, 422),
    (errors.InvalidDuration, 422),
    (errors.InvalidOverlap, 422),
    (errors.TimestampOutOfRange, 422),
    (errors.EmptyBody, 422),
    (errors.InvalidVote, 422),
    (errors.BackendFailure, 502),
]


class IngestRequest(BaseModel):
    video_id: str
    media_ref: str
    sidecar_ref: str
    window_s: float | None = None
    overlap_s: float | None = None


class FeedbackRequest(BaseModel):
    query: str
    video_id: str
    timestamp_s: float
    vote: int
    client: str = ""


class CommentRequest(BaseModel):
    video_id: str
    timestamp_s: float
    body: str
    link: str | None = None
    client: str = ""


def _hit_json(enriched: EnrichedHit) -> dict:
    row = asdict(enriched.hit)
    row["matched_terms"] = list(enriched.hit.matched_terms)
    row["comments"] = [asdict(c) for c in enriched.comments]
    row["media_ref"] = enriched.media_ref
    return row


def parse_since(raw: str | None) -> float | None:
    """Accept epoch seconds or an ISO 8601 timestamp."""
    if raw is None or raw == "":
        return None
    try:
        return float(raw)
    except ValueError:
        pass
    try:
        return datetime.fromisoformat(raw).timestamp()
    except ValueError:
        raise errors.ConfigError(f"cannot parse timestamp {raw!r}") from None


def create_service(app_core: SearchApp) -> FastAPI:
    api = FastAPI(title="timeseek", version="1")

    for err_type, status in _STATUS_BY_ERROR:
        def handler(request: Request, exc: Exception, status: int = status) -> JSONResponse:
            return JSONResponse(
                status_code=status,
                content={"error": type(exc).__name__, "detail": str(exc)},
            )
        api.add_exception_handler(err_type, handler)

    @api.get("/v1/healthz")
    def healthz() -> dict:
        return {"status": "ok", "videos": app_core.index.video_count}

    @api.post("/v1/videos", status_code=201)
    def ingest(req: IngestRequest) -> dict:
        report = app_core.ingest(req.video_id, req.media_ref, req.sidecar_ref,
                                 req.window_s, req.overlap_s)
        return {
            "video_id": report.video_id,
            "token_count": report.token_count,
            "warnings": list(report.warnings),
        }

    @api.get("/v1/search")
    def search(q: str = "", k: int | None = None, client: str = "") -> dict:
        result = app_core.search(q, k, client)
        return {
            "query_norm": result.query_norm,
            "hits": [_hit_json(h) for h in result.hits],
            "related": [asdict(r) for r in result.related],
        }

    @api.post("/v1/feedback", status_code=201)
    def feedback(req: FeedbackRequest) -> dict:
        record_id = app_core.record_feedback(
            req.query, req.video_id, req.timestamp_s, req.vote, req.client)
        return {"id": record_id}

    @api.post("/v1/comments", status_code=201)
    def comment(req: CommentRequest) -> dict:
        comment_id = app_core.add_comment(
            req.video_id, req.timestamp_s, req.body, req.link, req.client)
        return {"id": comment_id}

    @api.get("/v1/videos/{video_id}/comments")
    def comments_range(
        video_id: str,
        t0: float = Query(0.0, alias="from"),
        t1: float | None = Query(None, alias="to"),
    ) -> list:
        rows = app_core.comments_in_range(
            video_id, t0, t1 if t1 is not None else float("inf"))
        return [asdict(c) for c in rows]

    @api.get("/v1/analytics/top-queries")
    def top_queries(n: int = 10, since: str | None = None) -> list:
        rows = app_core.top_queries(n, parse_since(since))
        return [{"query_norm": q, "count": c} for q, c in rows]

    @api.get("/v1/related")
    def related(q: str = "") -> list:
        return [asdict(r) for r in app_core.fetch_related(q)]

    return api


def run_server(config: AppConfig) -> None:
    """Blocking server entry point used by the CLI."""
    import uvicorn

    app_core = SearchApp(config)
    uvicorn.run(create_service(app_core), host=config.host, port=config.port)
