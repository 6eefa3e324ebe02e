"""Align tables to a FeatureSpace. Absent features get 0."""

from __future__ import annotations

from core.entities.features import FeatureSpace, FeatureVector, NGramCountTable, WordFrequencyTable
from core.exceptions import EmptyTableError


def vectorize_relative(table: NGramCountTable, space: FeatureSpace) -> FeatureVector:
    """Relative N-gram frequencies: count / total N-grams of the chapter.

    Raises:
        EmptyTableError: If the table holds no N-grams.
    """
    if table.total == 0:
        raise EmptyTableError(f"No {table.n}-grams to normalize: table is empty")
    total = table.total
    counts = table.counts
    return FeatureVector(
        space=space,
        values=tuple(counts.get(feature, 0) / total for feature in space.features),
    )


def vectorize_frequencies(table: WordFrequencyTable, space: FeatureSpace) -> FeatureVector:
    """Per-10k word frequencies as given."""
    entries = table.entries
    return FeatureVector(
        space=space,
        values=tuple(float(entries.get(feature, 0.0)) for feature in space.features),
    )
