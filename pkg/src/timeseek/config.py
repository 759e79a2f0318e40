"""Application configuration: one JSON file plus environment overrides.

Example file:

    {
      "host": "127.0.0.1",
      "port": 8080,
      "data_dir": "data",
      "window_s": 55,
      "overlap_s": 5,
      "backend": "mock",
      "related_corpus_dir": "corpus",
      "ranking": {"proximity_window_s": 10, "lead_in_s": 2},
      "normalization": {"unify_ta_marbuta": false}
    }

Every scalar can also be overridden by an environment variable with the
TIMESEEK_ prefix: TIMESEEK_HOST, TIMESEEK_PORT, TIMESEEK_DATA_DIR,
TIMESEEK_WINDOW_S, TIMESEEK_OVERLAP_S, TIMESEEK_BACKEND,
TIMESEEK_RELATED_CORPUS_DIR. Environment wins over file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping

from .errors import ConfigError
from .segmenter import DEFAULT_OVERLAP_S, DEFAULT_WINDOW_S
from .textnorm import NormalizationConfig
from .timeindex import RankingParams

ENV_PREFIX = "TIMESEEK_"


@dataclass
class AppConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    data_dir: str = "data"
    window_s: float = DEFAULT_WINDOW_S
    overlap_s: float = DEFAULT_OVERLAP_S
    backend: str = "mock"
    related_corpus_dir: str | None = None
    ranking: RankingParams = field(default_factory=RankingParams)
    normalization: NormalizationConfig = field(default_factory=NormalizationConfig)


_ENV_SCALARS = {
    "HOST": ("host", str),
    "PORT": ("port", int),
    "DATA_DIR": ("data_dir", str),
    "WINDOW_S": ("window_s", float),
    "OVERLAP_S": ("overlap_s", float),
    "BACKEND": ("backend", str),
    "RELATED_CORPUS_DIR": ("related_corpus_dir", str),
}


def load_config(path: str | Path | None = None,
                env: Mapping[str, str] | None = None) -> AppConfig:
    """Build an AppConfig from an optional JSON file and the environment."""
    env = os.environ if env is None else env
    data: dict[str, Any] = {}
    if path is not None:
        p = Path(path)
        try:
            data = json.loads(p.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {p}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {p} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {p} must contain a JSON object")

    cfg = AppConfig()
    try:
        for f in fields(AppConfig):
            if f.name in ("ranking", "normalization") or f.name not in data:
                continue
            setattr(cfg, f.name, data[f.name])
        if "ranking" in data:
            cfg.ranking = RankingParams(**data["ranking"])
        if "normalization" in data:
            cfg.normalization = NormalizationConfig(**data["normalization"])
    except TypeError as exc:
        raise ConfigError(f"bad config field: {exc}") from exc

    for suffix, (attr, cast) in _ENV_SCALARS.items():
        raw = env.get(ENV_PREFIX + suffix)
        if raw is not None:
            try:
                setattr(cfg, attr, cast(raw))
            except ValueError as exc:
                raise ConfigError(f"bad {ENV_PREFIX}{suffix}={raw!r}: {exc}") from exc

    if cfg.overlap_s < 0 or cfg.window_s <= cfg.overlap_s:
        raise ConfigError(
            f"need window_s > overlap_s >= 0, got window_s={cfg.window_s} "
            f"overlap_s={cfg.overlap_s}"
        )
    return cfg
