"""Word and character error rates from a minimal edit alignment.

The distance is the usual unit-cost edit distance. The split into
substitutions, deletions, and insertions is made deterministic by a
global rule: among all minimal-cost alignments, take the one with the
most substitutions (substitution preferred over an insert/delete pair).
With the distance d and the maximal substitution count S fixed, the
remaining counts follow from the sequence lengths alone:

    D = (d - S + len(ref) - len(hyp)) / 2
    I = (d - S - len(ref) + len(hyp)) / 2

so no alignment traceback is needed, and the split is symmetric: swapping
ref and hyp keeps S and swaps D with I.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyReference
from .textnorm import DEFAULT_CONFIG, NormalizationConfig, normalize


@dataclass(frozen=True)
class WerReport:
    substitutions: int
    deletions: int
    insertions: int
    ref_len: int

    @property
    def total_edits(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    @property
    def wer(self) -> float:
        return self.total_edits / self.ref_len

    def rate_percent(self, decimals: int = 1) -> str:
        """The rate formatted like published tables, e.g. '22.5%'."""
        return f"{self.wer * 100:.{decimals}f}%"


def _edit_counts(ref: Sequence, hyp: Sequence) -> tuple[int, int, int]:
    """(S, D, I) of a minimal edit script, substitutions maximized."""
    n, m = len(ref), len(hyp)
    # Rolling rows: dist[j] = edit distance ref[:i] -> hyp[:j],
    # subs[j] = max substitutions among minimal alignments of those prefixes.
    dist = list(range(m + 1))
    subs = [0] * (m + 1)
    for i in range(1, n + 1):
        prev_dist, prev_subs = dist, subs
        dist = [i] + [0] * m
        subs = [0] * (m + 1)
        for j in range(1, m + 1):
            mismatch = ref[i - 1] != hyp[j - 1]
            diag = prev_dist[j - 1] + mismatch
            up = prev_dist[j] + 1
            left = dist[j - 1] + 1
            best = min(diag, up, left)
            dist[j] = best
            cand = -1
            if diag == best:
                cand = prev_subs[j - 1] + mismatch
            if up == best:
                cand = max(cand, prev_subs[j])
            if left == best:
                cand = max(cand, subs[j - 1])
            subs[j] = cand
    d, s = dist[m], subs[m]
    deletions = (d - s + n - m) // 2
    insertions = (d - s - n + m) // 2
    return s, deletions, insertions


def word_error_rate(
    ref: Sequence[str],
    hyp: Sequence[str],
    *,
    raw: bool = False,
    config: NormalizationConfig = DEFAULT_CONFIG,
) -> WerReport:
    """WER of a hypothesis word sequence against a reference.

    By default both sides are normalized first (a diacritic difference is
    not a recognition error); words that normalize to nothing are dropped.
    Pass raw=True to compare surface forms as given.
    """
    if not raw:
        ref = [w for w in (normalize(t, config) for t in ref) if w]
        hyp = [w for w in (normalize(t, config) for t in hyp) if w]
    if not ref:
        raise EmptyReference("reference is empty")
    s, d, i = _edit_counts(ref, hyp)
    return WerReport(substitutions=s, deletions=d, insertions=i, ref_len=len(ref))


def char_error_rate(
    ref: str,
    hyp: str,
    *,
    raw: bool = False,
    config: NormalizationConfig = DEFAULT_CONFIG,
) -> WerReport:
    """Same alignment at codepoint granularity over normalized strings."""
    if not raw:
        ref = normalize(ref, config)
        hyp = normalize(hyp, config)
    if not ref:
        raise EmptyReference("reference is empty")
    s, d, i = _edit_counts(ref, hyp)
    return WerReport(substitutions=s, deletions=d, insertions=i, ref_len=len(ref))
