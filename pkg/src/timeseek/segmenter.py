"""Overlapping transcription windows and duplicate-free merge.

Transcribing a long recording in disjoint chunks loses words that straddle
chunk boundaries. Windows here overlap by a configurable margin so every
word lies whole inside at least one window, and the merge step keeps each
word exactly once by assigning every window an ownership interval: the
midpoint of the overlap region between two consecutive windows is the
boundary between what they own. A token survives the merge iff its time
midpoint falls in its window's ownership interval; a midpoint exactly on
the boundary belongs to the later window.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .errors import InvalidDuration, InvalidOverlap, TokenOutOfWindow

DEFAULT_WINDOW_S = 55.0
DEFAULT_OVERLAP_S = 5.0


@dataclass(frozen=True, slots=True)
class WindowPlan:
    """One transcription window plus the sub-range it owns after merge.

    Ownership intervals [own_start_s, own_end_s) of a plan partition
    [0, duration) exactly: no gaps, no overlaps.
    """

    index: int
    start_s: float
    end_s: float
    own_start_s: float
    own_end_s: float


@dataclass(frozen=True, slots=True)
class TimedToken:
    """One transcribed word with absolute start/end seconds in its video."""

    surface: str
    normalized: str
    start_s: float
    end_s: float
    video_id: str = ""
    seq: int = -1


def plan_windows(duration_s: float, window_s: float = DEFAULT_WINDOW_S,
                 overlap_s: float = DEFAULT_OVERLAP_S) -> list[WindowPlan]:
    """Plan overlapping windows covering [0, duration_s].

    Window i starts at i * (window_s - overlap_s) and ends at
    min(start + window_s, duration_s). A window is added while it extends
    coverage, i.e. while the previous window's unclamped end is short of
    the duration; the first window always exists. Only the final window
    can be clamped.
    """
    if duration_s <= 0:
        raise InvalidDuration(f"duration_s must be > 0, got {duration_s}")
    if overlap_s < 0 or window_s <= overlap_s:
        raise InvalidOverlap(
            f"need window_s > overlap_s >= 0, got window_s={window_s} overlap_s={overlap_s}"
        )

    stride = window_s - overlap_s
    starts: list[float] = [0.0]
    i = 1
    while True:
        s = i * stride
        if s + overlap_s >= duration_s:
            break
        starts.append(s)
        i += 1
    ends = [min(s + window_s, duration_s) for s in starts]

    # Ownership boundary between windows i and i+1: midpoint of their
    # overlap region [starts[i+1], ends[i]].
    bounds = [0.0]
    for j in range(len(starts) - 1):
        bounds.append((starts[j + 1] + ends[j]) / 2.0)
    bounds.append(duration_s)

    return [
        WindowPlan(index=j, start_s=starts[j], end_s=ends[j],
                   own_start_s=bounds[j], own_end_s=bounds[j + 1])
        for j in range(len(starts))
    ]


def merge_windows(
    segments: Iterable[tuple[WindowPlan, Sequence[TimedToken]]],
) -> list[TimedToken]:
    """Merge per-window transcripts into one time-ordered token stream.

    Requires segments sorted by window index. Keeps a token iff its
    midpoint lies in its window's ownership interval (half-open, so a
    midpoint exactly on a boundary goes to the later window); duplicates
    from the overlap regions collapse to a single copy. Output is sorted
    by start time with seq renumbered from 0.
    """
    kept: list[TimedToken] = []
    for plan, tokens in segments:
        for tok in tokens:
            if tok.start_s < plan.start_s or tok.end_s > plan.end_s:
                raise TokenOutOfWindow(
                    f"token [{tok.start_s}, {tok.end_s}] outside window "
                    f"{plan.index} [{plan.start_s}, {plan.end_s}]"
                )
            mid = (tok.start_s + tok.end_s) / 2.0
            if plan.own_start_s <= mid < plan.own_end_s:
                kept.append(tok)
    kept.sort(key=lambda t: (t.start_s, t.end_s))
    return [replace(tok, seq=n) for n, tok in enumerate(kept)]
