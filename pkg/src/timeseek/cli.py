"""Operator command line: ingest, search, serve, evaluate, analytics.

Exit codes: 0 success, 1 operational error (bad input or file), 2 usage
error. Machine-parseable output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .app import SearchApp
from .config import AppConfig, load_config
from .errors import EmptyReference, TimeseekError
from .evaluate import char_error_rate, word_error_rate
from .segmenter import DEFAULT_OVERLAP_S, DEFAULT_WINDOW_S
from .service import parse_since, run_server


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timeseek",
        description="Time-coded search over transcribed lecture video.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="transcribe and index one video")
    p.add_argument("--media", required=True, help="media descriptor JSON file")
    p.add_argument("--sidecar", required=True, help="sidecar transcript file")
    p.add_argument("--id", required=True, dest="video_id", help="video id")
    p.add_argument("--window", type=float, default=DEFAULT_WINDOW_S,
                   help="window length in seconds")
    p.add_argument("--overlap", type=float, default=DEFAULT_OVERLAP_S,
                   help="window overlap in seconds")
    p.add_argument("--data-dir", default="data")

    p = sub.add_parser("search", help="query an indexed data directory")
    p.add_argument("query")
    p.add_argument("--k", type=int, default=None, help="max results")
    p.add_argument("--data-dir", default="data")
    p.add_argument("--format", choices=("text", "records"), default="text",
                   help="records = one JSON object per line")

    p = sub.add_parser("eval-wer", help="word/character error rate of a hypothesis")
    p.add_argument("--ref", required=True, help="reference text file")
    p.add_argument("--hyp", required=True, help="hypothesis text file")
    p.add_argument("--char", action="store_true", help="character-level rate")
    p.add_argument("--raw", action="store_true",
                   help="compare surface forms without normalization")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", default=None, help="JSON config file")

    p = sub.add_parser("top-queries", help="most frequent logged queries")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--since", default=None,
                   help="epoch seconds or ISO 8601 timestamp")
    p.add_argument("--data-dir", default="data")

    return parser


def _make_app(data_dir: str, *, must_exist: bool = False) -> SearchApp:
    if must_exist and not Path(data_dir).is_dir():
        raise FileNotFoundError(f"data directory {data_dir!r} does not exist")
    return SearchApp(AppConfig(data_dir=data_dir))


def _cmd_ingest(args: argparse.Namespace) -> int:
    app = _make_app(args.data_dir)
    report = app.ingest(args.video_id, args.media, args.sidecar,
                        window_s=args.window, overlap_s=args.overlap)
    print(json.dumps({
        "video_id": report.video_id,
        "token_count": report.token_count,
        "warnings": list(report.warnings),
    }, ensure_ascii=False))
    for code in report.warnings:
        print(f"warning: {code}", file=sys.stderr)
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    app = _make_app(args.data_dir, must_exist=True)
    result = app.search(args.query, args.k)
    for enriched in result.hits:
        hit = enriched.hit
        if args.format == "records":
            print(json.dumps({
                "video_id": hit.video_id,
                "start_s": hit.start_s,
                "end_s": hit.end_s,
                "score": hit.score,
                "snippet": hit.snippet,
                "matched_terms": list(hit.matched_terms),
            }, ensure_ascii=False))
        else:
            print(f"{hit.video_id}  t={hit.start_s:.1f}s  "
                  f"score={hit.score:.3f}  {hit.snippet}")
    return 0


def _cmd_eval_wer(args: argparse.Namespace) -> int:
    ref_text = _read_file(args.ref)
    hyp_text = _read_file(args.hyp)
    if args.char:
        report = char_error_rate(ref_text, hyp_text, raw=args.raw)
        label = "cer"
    else:
        report = word_error_rate(ref_text.split(), hyp_text.split(), raw=args.raw)
        label = "wer"
    print(f"S={report.substitutions} D={report.deletions} I={report.insertions} "
          f"ref_len={report.ref_len} {label}={report.rate_percent()}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    run_server(config)
    return 0


def _cmd_top_queries(args: argparse.Namespace) -> int:
    app = _make_app(args.data_dir, must_exist=True)
    for query_norm, count in app.top_queries(args.n, parse_since(args.since)):
        print(f"{query_norm}\t{count}")
    return 0


def _read_file(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


_COMMANDS = {
    "ingest": _cmd_ingest,
    "search": _cmd_search,
    "eval-wer": _cmd_eval_wer,
    "serve": _cmd_serve,
    "top-queries": _cmd_top_queries,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "ingest" and (args.overlap < 0 or args.overlap >= args.window):
        parser.error(f"--overlap must satisfy 0 <= overlap < window, "
                     f"got overlap={args.overlap} window={args.window}")

    try:
        return _COMMANDS[args.command](args)
    except EmptyReference as exc:
        print(f"error: empty reference: {exc}", file=sys.stderr)
        return 1
    except TimeseekError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
