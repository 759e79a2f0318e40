"""Arabic-aware text normalization and tokenization.

Indexing and querying must agree on a single normal form, so both go
through this module. The rules:

1. Unicode canonical composition (NFC) first, so precomposed and
   decomposed inputs normalize identically.
2. Strip Arabic diacritics: harakat, tanwin, shadda, sukun, superscript
   alef, and the Quranic annotation marks.
3. Unify alef variants: أ إ آ ٱ -> ا
4. Unify alef maqsura: ى -> ي
5. Unify ta marbuta: ة -> ه
6. Remove tatweel (kashida): ـ
7. Case-fold Latin text.

Every rule is individually switchable (see NormalizationConfig) but all
default to on: ASR output vocalization is inconsistent, so matching has
to ignore it.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

ALEF_VARIANTS = re.compile("[أإآٱ]")
ALEF_MAQSURA = "ى"
TA_MARBUTA = "ة"
TATWEEL = "ـ"

# Combining marks are stripped by Unicode category (Mn) within the Arabic
# blocks rather than by a hand-listed range, which also covers the Quranic
# annotation marks and superscript alef.
_ARABIC_BLOCKS = (
    ("؀", "ۿ"),
    ("ݐ", "ݿ"),
    ("ࢠ", "ࣿ"),
    ("ﭐ", "﷿"),
    ("ﹰ", "﻿"),
)


def _is_arabic_mark(ch: str) -> bool:
    if unicodedata.category(ch) != "Mn":
        return False
    return any(lo <= ch <= hi for lo, hi in _ARABIC_BLOCKS)


@dataclass(frozen=True)
class NormalizationConfig:
    """Switches for the individual normalization rules.

    The engine treats its config as immutable after start; the dataclass
    is frozen to make accidental mutation impossible.
    """

    strip_diacritics: bool = True
    unify_alef: bool = True
    unify_alef_maqsura: bool = True
    unify_ta_marbuta: bool = True
    remove_tatweel: bool = True
    fold_latin_case: bool = True


DEFAULT_CONFIG = NormalizationConfig()


@dataclass(frozen=True, slots=True)
class Token:
    """One tokenizer output: original substring, normal form, source span.

    char_span is a half-open [start, end) offset pair into the source
    string, so ``source[start:end] == surface`` always holds.
    """

    surface: str
    normalized: str
    char_span: tuple[int, int]


def normalize(text: str, config: NormalizationConfig = DEFAULT_CONFIG) -> str:
    """Apply the configured normalization rules. Total and idempotent."""
    out = unicodedata.normalize("NFC", text)
    if config.strip_diacritics:
        out = "".join(ch for ch in out if not _is_arabic_mark(ch))
    if config.unify_alef:
        out = ALEF_VARIANTS.sub("ا", out)
    if config.unify_alef_maqsura:
        out = out.replace(ALEF_MAQSURA, "ي")
    if config.unify_ta_marbuta:
        out = out.replace(TA_MARBUTA, "ه")
    if config.remove_tatweel:
        out = out.replace(TATWEEL, "")
    if config.fold_latin_case:
        out = out.casefold()
    return out


def _is_word_char(ch: str) -> bool:
    # Letters, digits, and combining marks belong to tokens; anything else
    # separates. Marks must not split words ("الرَّحمن" is one token) and
    # tatweel is category Lm, so it stays inside its token and is removed
    # by normalization afterwards.
    return unicodedata.category(ch)[0] in "LMN"


def tokenize(text: str, config: NormalizationConfig = DEFAULT_CONFIG) -> list[Token]:
    """Split on any non-letter, non-digit codepoint and normalize each piece.

    Tokens whose normal form is empty (pure diacritics, bare tatweel) are
    dropped. Spans index the source string exactly as given, before any
    normalization.
    """
    tokens: list[Token] = []
    start = None
    for i, ch in enumerate(text):
        if _is_word_char(ch):
            if start is None:
                start = i
        elif start is not None:
            _append_token(tokens, text, start, i, config)
            start = None
    if start is not None:
        _append_token(tokens, text, start, len(text), config)
    return tokens


def _append_token(
    tokens: list[Token], text: str, start: int, end: int, config: NormalizationConfig
) -> None:
    surface = text[start:end]
    normalized = normalize(surface, config)
    if normalized:
        tokens.append(Token(surface=surface, normalized=normalized, char_span=(start, end)))


def normalize_query(query: str, config: NormalizationConfig = DEFAULT_CONFIG) -> str:
    """Canonical normal form of a whole query: normalized tokens joined by
    single spaces.

    This is the string used to key feedback records and the query log, so
    queries differing only in whitespace or punctuation share one key.
    Returns "" when the query normalizes to no tokens.
    """
    return " ".join(t.normalized for t in tokenize(query, config))
