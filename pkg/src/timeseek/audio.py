"""Audio metadata and its validation.

Media references are opaque to the engine: no audio is decoded. What the
pipeline needs is a small descriptor (sample rate, channels, duration),
read from a JSON file next to the media. Validation never throws; it
reports warnings and errors so ingest can surface them in one place.
Recognition quality drops sharply below 16 kHz, hence the warning
threshold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import MediaParseError

RECOMMENDED_SAMPLE_RATE_HZ = 16000

BELOW_RECOMMENDED_SAMPLE_RATE = "BelowRecommendedSampleRate"
NON_POSITIVE_DURATION = "NonPositiveDuration"
NON_POSITIVE_SAMPLE_RATE = "NonPositiveSampleRate"
INVALID_CHANNEL_COUNT = "InvalidChannelCount"


@dataclass(frozen=True)
class AudioMeta:
    sample_rate_hz: int
    channels: int
    duration_s: float


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    warnings: tuple[ValidationIssue, ...]
    errors: tuple[ValidationIssue, ...]

    @property
    def clean(self) -> bool:
        return not self.warnings and not self.errors

    @property
    def ok(self) -> bool:
        """No hard errors; warnings allowed."""
        return not self.errors


def validate_audio(meta: AudioMeta) -> ValidationReport:
    """Check a descriptor. Issues are reported, never raised."""
    warnings: list[ValidationIssue] = []
    errors: list[ValidationIssue] = []

    if meta.sample_rate_hz <= 0:
        errors.append(ValidationIssue(
            NON_POSITIVE_SAMPLE_RATE,
            f"sample rate must be positive, got {meta.sample_rate_hz}",
        ))
    elif meta.sample_rate_hz < RECOMMENDED_SAMPLE_RATE_HZ:
        warnings.append(ValidationIssue(
            BELOW_RECOMMENDED_SAMPLE_RATE,
            f"{meta.sample_rate_hz} Hz is below the recommended "
            f"{RECOMMENDED_SAMPLE_RATE_HZ} Hz; recognition quality may suffer",
        ))
    if meta.duration_s <= 0:
        errors.append(ValidationIssue(
            NON_POSITIVE_DURATION,
            f"duration must be positive, got {meta.duration_s}",
        ))
    if meta.channels < 1:
        errors.append(ValidationIssue(
            INVALID_CHANNEL_COUNT,
            f"need at least one channel, got {meta.channels}",
        ))
    return ValidationReport(warnings=tuple(warnings), errors=tuple(errors))


def load_audio_meta(path: str | Path) -> AudioMeta:
    """Read a media descriptor JSON file.

    Expected shape: {"sample_rate_hz": int, "channels": int,
    "duration_s": number}.
    """
    p = Path(path)
    try:
        raw = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise MediaParseError(f"cannot read media descriptor {p}: {exc}") from exc
    try:
        data = json.loads(raw)
        return AudioMeta(
            sample_rate_hz=int(data["sample_rate_hz"]),
            channels=int(data["channels"]),
            duration_s=float(data["duration_s"]),
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise MediaParseError(f"malformed media descriptor {p}: {exc}") from exc
