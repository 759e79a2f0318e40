"""Transcriber backend contract, the deterministic mock, and the gateway.

Real speech APIs are request/response per audio chunk, so the contract
here is synchronous: one window in, one transcript segment out. Backends
may return per-word timings or plain text; for text-only backends the
gateway fabricates timings by splitting the window proportionally to each
word's character count.

The mock backend replays a sidecar transcript file, which keeps the whole
pipeline offline and reproducible. Sidecar format (UTF-8, one word per
line, sorted by start):

    start_s<TAB>end_s<TAB>surface

Lines starting with '#' are comments; blank lines are ignored.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .errors import BackendFailure, SidecarParseError, UnknownBackend
from .segmenter import TimedToken, WindowPlan
from .textnorm import DEFAULT_CONFIG, NormalizationConfig, normalize

# (surface, start_s, end_s) with absolute times
TimedWord = tuple[str, float, float]
BackendResult = Union[Sequence[TimedWord], str]


@dataclass(frozen=True)
class TranscriptSegment:
    """Transcription of one window: words with absolute timestamps."""

    window: WindowPlan
    words: list[TimedToken]
    backend_id: str
    confidence: float | None = None


class TranscriberBackend(ABC):
    """One transcription request per window.

    Implementations return either a sequence of (surface, start_s, end_s)
    with absolute times inside the window, or a plain string when the
    engine has no word timings (the gateway then fabricates them).
    """

    backend_id: str = "abstract"

    @abstractmethod
    def transcribe_window(self, media_ref: str, window: WindowPlan) -> BackendResult:
        raise NotImplementedError


@dataclass(frozen=True)
class SidecarWord:
    surface: str
    start_s: float
    end_s: float


def parse_sidecar(source: str | Path) -> list[SidecarWord]:
    """Parse a sidecar transcript file (or literal text content).

    Validates the format contract: three tab-separated fields, numeric
    times with start < end, lines sorted by start.
    """
    if isinstance(source, Path):
        try:
            text = source.read_text(encoding="utf-8")
        except OSError as exc:
            raise SidecarParseError(f"cannot read sidecar {source}: {exc}") from exc
    else:
        text = source

    words: list[SidecarWord] = []
    prev_start = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.split("\t", 2)
        if len(parts) != 3:
            raise SidecarParseError(f"line {lineno}: expected start<TAB>end<TAB>surface")
        try:
            start_s = float(parts[0])
            end_s = float(parts[1])
        except ValueError as exc:
            raise SidecarParseError(f"line {lineno}: non-numeric time: {exc}") from exc
        surface = parts[2].strip()
        if not surface:
            raise SidecarParseError(f"line {lineno}: empty surface")
        if end_s <= start_s:
            raise SidecarParseError(f"line {lineno}: end {end_s} not after start {start_s}")
        if prev_start is not None and start_s < prev_start:
            raise SidecarParseError(f"line {lineno}: lines not sorted by start_s")
        prev_start = start_s
        words.append(SidecarWord(surface=surface, start_s=start_s, end_s=end_s))
    return words


class SidecarMockBackend(TranscriberBackend):
    """Deterministic backend replaying a parsed sidecar transcript.

    A window's transcript is exactly the sidecar words fully contained in
    it, which models a recognizer that hears whole words only. Same media
    and window always yield the same result.
    """

    backend_id = "mock"

    def __init__(self, words: Sequence[SidecarWord]):
        self._words = list(words)

    @classmethod
    def from_file(cls, path: str | Path) -> "SidecarMockBackend":
        return cls(parse_sidecar(Path(path)))

    def transcribe_window(self, media_ref: str, window: WindowPlan) -> BackendResult:
        return [
            (w.surface, w.start_s, w.end_s)
            for w in self._words
            if w.start_s >= window.start_s and w.end_s <= window.end_s
        ]


class StaticTextBackend(TranscriberBackend):
    """Text-only backend for tests and as a template for real API clients.

    Maps window index to a plain string; the gateway fabricates the word
    timings.
    """

    backend_id = "static-text"

    def __init__(self, text_by_window: dict[int, str] | str):
        self._texts = text_by_window

    def transcribe_window(self, media_ref: str, window: WindowPlan) -> BackendResult:
        if isinstance(self._texts, str):
            return self._texts
        return self._texts.get(window.index, "")


def fabricate_timings(text: str, window: WindowPlan) -> list[TimedWord]:
    """Distribute a window across whitespace-split words proportionally to
    character count."""
    words = text.split()
    if not words:
        return []
    total = sum(len(w) for w in words)
    span = window.end_s - window.start_s
    out: list[TimedWord] = []
    consumed = 0
    for w in words:
        start = window.start_s + span * consumed / total
        consumed += len(w)
        end = window.start_s + span * consumed / total
        out.append((w, start, end))
    return out


class BackendRegistry:
    """Named backend lookup for config-driven selection."""

    def __init__(self) -> None:
        self._backends: dict[str, TranscriberBackend] = {}

    def register(self, backend: TranscriberBackend) -> None:
        self._backends[backend.backend_id] = backend

    def get(self, backend_id: str) -> TranscriberBackend:
        try:
            return self._backends[backend_id]
        except KeyError:
            raise UnknownBackend(f"no backend registered as {backend_id!r}") from None

    def __contains__(self, backend_id: str) -> bool:
        return backend_id in self._backends


def transcribe(
    media_ref: str,
    window: WindowPlan,
    backend: TranscriberBackend | str,
    *,
    registry: BackendRegistry | None = None,
    config: NormalizationConfig = DEFAULT_CONFIG,
) -> TranscriptSegment:
    """Transcribe one window through a backend (instance or registered id).

    Words come back as TimedTokens with absolute timestamps and their
    normal forms filled in; video_id is assigned later by the ingest
    pipeline. An empty window yields an empty segment, not an error.
    """
    if isinstance(backend, str):
        if registry is None:
            raise UnknownBackend(f"no registry to resolve backend {backend!r}")
        backend = registry.get(backend)

    try:
        result = backend.transcribe_window(media_ref, window)
    except Exception as exc:
        raise BackendFailure(f"backend {backend.backend_id!r} failed: {exc}") from exc

    timed: Sequence[TimedWord]
    if isinstance(result, str):
        timed = fabricate_timings(result, window)
    else:
        timed = result

    words = [
        TimedToken(surface=surface, normalized=normalize(surface, config),
                   start_s=start_s, end_s=end_s, seq=i)
        for i, (surface, start_s, end_s) in enumerate(timed)
    ]
    return TranscriptSegment(window=window, words=words, backend_id=backend.backend_id)
