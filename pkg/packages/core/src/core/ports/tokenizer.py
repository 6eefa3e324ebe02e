"""Tokenizer port: split normalized text into word tokens."""

from __future__ import annotations

from typing import Protocol


class WordTokenizer(Protocol):
    """Outbound port: surface-form word tokenizer."""

    def tokenize(self, text: str) -> list[str]:
        """Maximal runs of letters, lower-cased, diacritics preserved."""
        ...
