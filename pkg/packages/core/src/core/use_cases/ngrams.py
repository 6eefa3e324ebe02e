"""Character N-gram counting over a whitespace-free stream.

★ The whole text is one string: grams spanning former word boundaries count
  ("I am" → "Ia", "am").
★ Punctuation stays in the stream unless strip_punctuation is set.
"""

from __future__ import annotations

import unicodedata
from collections import Counter

from core.entities.features import NGramCountTable
from core.exceptions import FeatureError


def gram_stream(text: str, *, strip_punctuation: bool = False) -> str:
    """Drop every Unicode whitespace codepoint (and punctuation, if asked)."""
    if strip_punctuation:
        return "".join(
            ch for ch in text if not ch.isspace() and not unicodedata.category(ch).startswith("P")
        )
    return "".join(ch for ch in text if not ch.isspace())


def extract_ngram_counts(
    text: str,
    n: int,
    *,
    strip_punctuation: bool = False,
) -> NGramCountTable:
    """Count every window of ``n`` consecutive codepoints.

    A stream shorter than ``n`` yields an empty table, not an error.
    """
    if n < 1:
        raise FeatureError(f"N-gram length must be >= 1, got {n}")
    stream = gram_stream(text, strip_punctuation=strip_punctuation)
    windows = len(stream) - n + 1
    counts = Counter(stream[i : i + n] for i in range(max(0, windows)))
    return NGramCountTable(n=n, counts=counts)
