"""timeseek: time-coded search over transcribed lecture video.

Ingest media through an overlap-windowed transcription pipeline, index
the time-stamped tokens, and answer text queries with second-accurate
positions, refined by user feedback and time-anchored comments.
"""

from .audio import AudioMeta, ValidationReport, validate_audio
from .engagement import Comment, EngagementStore, FeedbackRecord
from .evaluate import WerReport, char_error_rate, word_error_rate
from .segmenter import TimedToken, WindowPlan, merge_windows, plan_windows
from .textnorm import (
    DEFAULT_CONFIG,
    NormalizationConfig,
    Token,
    normalize,
    normalize_query,
    tokenize,
)
from .timeindex import RankingParams, SearchHit, TimeIndex
from .transcribe import SidecarMockBackend, TranscriberBackend, transcribe

__version__ = "0.1.0"

__all__ = [
    "AudioMeta",
    "Comment",
    "DEFAULT_CONFIG",
    "EngagementStore",
    "FeedbackRecord",
    "NormalizationConfig",
    "RankingParams",
    "SearchHit",
    "SidecarMockBackend",
    "TimeIndex",
    "TimedToken",
    "Token",
    "TranscriberBackend",
    "ValidationReport",
    "WerReport",
    "WindowPlan",
    "char_error_rate",
    "merge_windows",
    "normalize",
    "normalize_query",
    "plan_windows",
    "tokenize",
    "transcribe",
    "validate_audio",
    "word_error_rate",
]
