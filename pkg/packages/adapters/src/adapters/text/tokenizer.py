"""Surface-form word tokenizer for polytonic (and any other) script.

★ A token is a maximal run of letters; combining marks that survive NFC stay
  attached to their letter. Digits and punctuation separate tokens.
★ Lower-cased with str.lower, which keeps final sigma (ς) distinct from σ.
★ No lemmatization: tables from a vocabulary tool are preferred when available.
"""

from __future__ import annotations

import regex

from core.use_cases.normalization import normalize_text

_WORD = regex.compile(r"\p{L}[\p{L}\p{M}]*")


def tokenize_words(text: str) -> list[str]:
    """Split normalized text into lower-cased word tokens."""
    return [normalize_text(match.lower()) for match in _WORD.findall(text)]


class RegexWordTokenizer:
    """WordTokenizer backed by Unicode property classes."""

    def tokenize(self, text: str) -> list[str]:
        return tokenize_words(text)
