from __future__ import annotations

import json
from pathlib import Path

import pytest

from timeseek.app import SearchApp
from timeseek.config import AppConfig


def write_media(path: Path, duration_s: float, sample_rate_hz: int = 16000,
                channels: int = 1) -> Path:
    path.write_text(json.dumps({
        "sample_rate_hz": sample_rate_hz,
        "channels": channels,
        "duration_s": duration_s,
    }), encoding="utf-8")
    return path


def write_sidecar(path: Path, words: list[tuple[float, float, str]]) -> Path:
    lines = ["# synthetic sidecar"]
    lines += [f"{start}\t{end}\t{surface}" for start, end, surface in words]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def app(tmp_path: Path) -> SearchApp:
    return SearchApp(AppConfig(data_dir=str(tmp_path / "data")))


@pytest.fixture
def ingested_app(tmp_path: Path, app: SearchApp) -> SearchApp:
    """One 100 s video of 100 one-second words, ingested via the mock."""
    words = [(float(i), float(i + 1), f"كلمة{i}") for i in range(100)]
    media = write_media(tmp_path / "v1.media.json", duration_s=100.0)
    sidecar = write_sidecar(tmp_path / "v1.tsv", words)
    app.ingest("v1", str(media), str(sidecar), window_s=30, overlap_s=5)
    return app
