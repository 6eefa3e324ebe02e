"""Feature entities: count tables, frequency tables, feature spaces, vectors.

★ Tables are read-only mappings (MappingProxyType) so a frozen entity stays frozen.
★ FeatureSpace order is part of the contract: codepoint-lexicographic for
  master lists, frequency-ranked for top-N selections.
"""

from __future__ import annotations

import hashlib
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from core.exceptions import FeatureError, SpaceMismatchError


def _freeze[V](mapping: Mapping[str, V]) -> Mapping[str, V]:
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True, slots=True)
class NGramCountTable:
    """Raw counts of every N-codepoint window of one document."""

    n: int
    counts: Mapping[str, int] = field(default_factory=dict)
    total: int = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise FeatureError(f"N-gram length must be >= 1, got {self.n}")
        for gram, count in self.counts.items():
            if len(gram) != self.n:
                raise FeatureError(f"Gram {gram!r} does not have length {self.n}")
            if count < 0:
                raise FeatureError(f"Negative count {count} for gram {gram!r}")
        object.__setattr__(self, "counts", _freeze(self.counts))
        object.__setattr__(self, "total", sum(self.counts.values()))

    def keys(self) -> Iterator[str]:
        return iter(self.counts)


@dataclass(frozen=True, slots=True)
class WordFrequencyTable:
    """Word → frequency per 10,000 words for one document."""

    entries: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for word, freq in self.entries.items():
            if freq < 0:
                raise FeatureError(f"Negative frequency {freq} for word {word!r}")
        object.__setattr__(self, "entries", _freeze(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def keys(self) -> Iterator[str]:
        return iter(self.entries)


@dataclass(frozen=True, slots=True)
class FeatureSpace:
    """Ordered list of distinct feature keys shared by all vectors of a study."""

    features: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.features)) != len(self.features):
            raise FeatureError("Feature space contains duplicate keys")

    def __len__(self) -> int:
        return len(self.features)

    def content_hash(self) -> str:
        """SHA-256 over the ordered features (NUL separated)."""
        digest = hashlib.sha256()
        for feature in self.features:
            digest.update(feature.encode("utf-8"))
            digest.update(b"\x00")
        return digest.hexdigest()


@dataclass(frozen=True, slots=True)
class FeatureVector:
    """A document's frequencies aligned to a FeatureSpace."""

    space: FeatureSpace
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.space):
            raise FeatureError(
                f"Vector has {len(self.values)} values for a space of {len(self.space)} features"
            )

    def __len__(self) -> int:
        return len(self.values)


def ensure_same_space(*vectors: FeatureVector) -> FeatureSpace:
    """Return the shared space of ``vectors`` or raise SpaceMismatchError."""
    if not vectors:
        raise FeatureError("No vectors given")
    space = vectors[0].space
    for vector in vectors[1:]:
        if vector.space is not space and vector.space != space:
            raise SpaceMismatchError("Vectors belong to different feature spaces")
    return space
