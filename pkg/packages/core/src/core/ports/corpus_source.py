"""Corpus ports: load chapters and their precomputed frequency tables.

★ Protocol-based structural subtyping.
★ File-backed implementations live in adapters/corpus/.
"""

from __future__ import annotations

from pathlib import Path
from typing import Protocol

from core.entities.document import Corpus
from core.entities.features import WordFrequencyTable


class CorpusSource(Protocol):
    """Outbound port: build a Corpus from a manifest."""

    def load(self, manifest_path: Path) -> Corpus:
        """Load every manifest entry, normalized, in manifest order."""
        ...


class FrequencyTableSource(Protocol):
    """Outbound port: read a precomputed word-frequency table."""

    def load(self, path: Path) -> WordFrequencyTable:
        """Parse one table; frequencies are taken as given."""
        ...
