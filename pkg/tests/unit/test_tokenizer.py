"""Unit tests for the surface-form word tokenizer."""

from __future__ import annotations

import unicodedata

from adapters.text.tokenizer import RegexWordTokenizer, tokenize_words


class TestTokenizeWords:
    def test_polytonic_sentence(self) -> None:
        assert tokenize_words("ὁ δὲ Κῦρος, ὁ βασιλεύς") == ["ὁ", "δὲ", "κῦρος", "ὁ", "βασιλεύς"]

    def test_empty(self) -> None:
        assert tokenize_words("") == []

    def test_digits_separate(self) -> None:
        assert tokenize_words("abc123def") == ["abc", "def"]

    def test_decomposed_marks_stay_attached(self) -> None:
        decomposed = unicodedata.normalize("NFD", "Κῦρος")
        assert tokenize_words(decomposed) == ["κῦρος"]

    def test_final_sigma_kept(self) -> None:
        assert tokenize_words("λόγος σοφός") == ["λόγος", "σοφός"]

    def test_port_adapter(self) -> None:
        assert RegexWordTokenizer().tokenize("Hello, world") == ["hello", "world"]
