"""Exception types shared across the engine."""


class TimeseekError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDuration(TimeseekError):
    """Media duration must be positive."""


class InvalidOverlap(TimeseekError):
    """Window overlap must satisfy 0 <= overlap < window."""


class TokenOutOfWindow(TimeseekError):
    """A transcribed token lies outside the bounds of its window."""


class UnknownBackend(TimeseekError):
    """No transcriber backend registered under the requested id."""


class BackendFailure(TimeseekError):
    """A transcriber backend raised; the original message is carried along."""


class SidecarParseError(TimeseekError):
    """Sidecar transcript file is malformed."""


class MediaParseError(TimeseekError):
    """Media descriptor file is missing or malformed."""


class InvalidAudio(TimeseekError):
    """Audio metadata failed validation with hard errors."""


class EmptyReference(TimeseekError):
    """Error-rate evaluation requires a non-empty reference."""


class DuplicateVideo(TimeseekError):
    """Video id is already indexed; remove it before re-ingesting."""


class UnknownVideo(TimeseekError):
    """Video id is not indexed."""


class EmptyQuery(TimeseekError):
    """Query normalizes to no tokens."""


class InvalidK(TimeseekError):
    """Result count k must be >= 1."""


class InvalidN(TimeseekError):
    """Aggregation size n must be >= 1."""


class UnsupportedVersion(TimeseekError):
    """Index file was written by an incompatible format version."""


class CorruptIndex(TimeseekError):
    """Index file is truncated or fails its checksum."""


class TimestampOutOfRange(TimeseekError):
    """Timestamp is negative or beyond the video duration."""


class EmptyBody(TimeseekError):
    """Comment body is empty after trimming."""


class InvalidVote(TimeseekError):
    """Feedback vote must be +1 or -1."""


class ConfigError(TimeseekError):
    """Configuration file or environment override is invalid."""
