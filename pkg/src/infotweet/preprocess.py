"""Tweet normalization and tokenization.

Normalization applies, in order: lowercasing, user-mention removal, URL
removal, whitespace collapsing.  Mentions are the corpus placeholder
``@USER`` plus any ``@handle``; URLs are the corpus placeholder ``HTTPURL``
(removed wherever it appears, since the corpus glues it to adjacent text)
plus any token starting with ``http://``, ``https://``, or ``www.``.

Tokenization is whitespace + punctuation splitting.  Hashtags stay whole
(``#covid19`` is one token) because they carry class signal; numerals are
kept verbatim.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .embeddings import PAD_INDEX, EmbeddingTable

# Patterns are written against lowercase text (lowercasing runs first).
_MENTION = re.compile(r"@[a-z0-9_]+")
_URL_PLACEHOLDER = re.compile(r"httpurl")
_URL = re.compile(r"(?:^|(?<=\s))(?:https?://|www\.)\S+")
_TOKEN = re.compile(r"#\w+|\w+|[^\w\s]")


def normalize(text: str) -> str:
    """Lowercase, strip mentions and URLs, collapse whitespace."""
    out = text.lower()
    out = _MENTION.sub(" ", out)
    out = _URL_PLACEHOLDER.sub(" ", out)
    out = _URL.sub(" ", out)
    return " ".join(out.split())


def tokenize(text: str) -> list[str]:
    """Split normalized text into word, hashtag, and punctuation tokens."""
    return _TOKEN.findall(text)


@dataclass(frozen=True)
class TokenSequence:
    """Index-encoded tweet, clipped or right-padded to ``max_length``."""

    indices: tuple[int, ...]
    original_length: int
    max_length: int

    def __post_init__(self):
        if len(self.indices) != self.max_length:
            raise ValueError(
                f"indices length {len(self.indices)} != max_length {self.max_length}"
            )


def encode(tokens: list[str], vocab: EmbeddingTable, max_length: int) -> TokenSequence:
    """Map tokens to vocabulary indices, clip/pad to ``max_length``.

    Out-of-vocabulary tokens map to UNK; padding uses PAD.
    """
    if max_length < 1:
        raise ValueError(f"max_length must be >= 1, got {max_length}")
    indices = [vocab.index(tok) for tok in tokens[:max_length]]
    if len(indices) < max_length:
        indices.extend([PAD_INDEX] * (max_length - len(indices)))
    return TokenSequence(
        indices=tuple(indices), original_length=len(tokens), max_length=max_length
    )
