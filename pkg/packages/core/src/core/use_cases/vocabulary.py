"""Master lists, word rates and top-N word selection.

★ Master lists are sorted codepoint-lexicographically, so permuting the
  input tables never changes the space.
★ Top-N ranks by combined frequency (descending), ties by word (ascending).
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from collections.abc import Iterable, Iterator, Sequence
from typing import Protocol

from core.entities.features import FeatureSpace, WordFrequencyTable
from core.exceptions import EmptyTableError, FeatureError, VocabularyTooSmallError
from core.value_objects import WORDS_PER_RATE


class KeyedTable(Protocol):
    """Anything with feature keys: count tables and word tables alike."""

    def keys(self) -> Iterator[str]: ...


def build_master_list(tables: Iterable[KeyedTable]) -> FeatureSpace:
    """Union of all keys, sorted."""
    keys: set[str] = set()
    for table in tables:
        keys.update(table.keys())
    return FeatureSpace(features=tuple(sorted(keys)))


def word_freq_per_10k(tokens: Sequence[str]) -> WordFrequencyTable:
    """Rate of every token per 10,000 running words.

    Raises:
        EmptyTableError: If ``tokens`` is empty.
    """
    if not tokens:
        raise EmptyTableError("Cannot compute word frequencies of an empty token list")
    total = len(tokens)
    counts = Counter(tokens)
    return WordFrequencyTable(
        entries={word: count / total * WORDS_PER_RATE for word, count in counts.items()}
    )


def combined_frequencies(tables: Iterable[WordFrequencyTable]) -> dict[str, float]:
    """Sum each word's frequency over every table (exactly rounded)."""
    parts: defaultdict[str, list[float]] = defaultdict(list)
    for table in tables:
        for word, freq in table.entries.items():
            parts[word].append(freq)
    return {word: math.fsum(values) for word, values in parts.items()}


def select_top_n(tables: Sequence[WordFrequencyTable], n: int) -> FeatureSpace:
    """The ``n`` most common words across ALL supplied tables.

    Raises:
        VocabularyTooSmallError: If fewer than ``n`` distinct words exist.
    """
    if n < 1:
        raise FeatureError(f"Top-N size must be >= 1, got {n}")
    combined = combined_frequencies(tables)
    if len(combined) < n:
        raise VocabularyTooSmallError(
            f"Requested top {n} words but the combined vocabulary has {len(combined)}"
        )
    ranked = sorted(combined.items(), key=lambda item: (-item[1], item[0]))
    return FeatureSpace(features=tuple(word for word, _ in ranked[:n]))
