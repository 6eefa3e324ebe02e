"""Experiment entities: what a study runs and the table it produces.

★ ExperimentSpec is validated on construction: an invalid spec never reaches
  the study runners.
★ ResultTable rows are keyed by (chapter, series); values must be finite.
"""

from __future__ import annotations

import math
import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from types import MappingProxyType
from typing import Any, Self

from core.exceptions import ExperimentError
from core.value_objects import DocumentId


class StudyKind(StrEnum):
    """The three study shapes."""

    NGRAM_INTRA = "ngram_intra"  # chapters of one work, last chapter disputed
    NGRAM_SUBSTITUTION = "ngram_substitution"  # last chapter replaced by a foreign one
    LOO_CLASSIFICATION = "loo_classification"  # leave-one-chapter-out NBC/SVM


class ClassifierKind(StrEnum):
    NBC = "nbc"
    SVM = "svm"


class FrequencyPolicy(StrEnum):
    """Where word-frequency tables come from."""

    AUTO = "auto"  # ingested table if present, otherwise tokenizer
    TABLES = "tables"  # ingested tables only; missing table is an error
    TOKENIZER = "tokenizer"  # always surface-form tokenizer


class SameAuthorSource(StrEnum):
    """Which chapters form the same-author training class of a classification study."""

    TARGETS = "targets"  # the other target chapters
    SELF_TRAIN = "self_train"  # only the self_train chapters
    BOTH = "both"  # other targets plus self_train


_TOP_K_PATTERN = re.compile(r"^top[_-]?(\d+)$")


@dataclass(frozen=True, slots=True)
class FeatureMode:
    """All words of the master list, or only its top-k most common words."""

    top_k: int | None = None

    def __post_init__(self) -> None:
        if self.top_k is not None and self.top_k < 1:
            raise ExperimentError(f"top_k must be >= 1, got {self.top_k}")

    @property
    def label(self) -> str:
        return "all" if self.top_k is None else f"top{self.top_k}"

    @classmethod
    def parse(cls, text: str) -> Self:
        """Parse ``all``, ``all_words``, ``top50``, ``top_50`` or a bare ``50``."""
        cleaned = text.strip().lower()
        if cleaned in {"all", "all_words"}:
            return cls()
        if cleaned.isdigit():
            return cls(top_k=int(cleaned))
        match = _TOP_K_PATTERN.match(cleaned)
        if match is None:
            raise ExperimentError(f"Unknown feature mode {text!r}")
        return cls(top_k=int(match.group(1)))


@dataclass(frozen=True, slots=True)
class StudyRoles:
    """Named document-id sets a study draws from."""

    target_work: tuple[DocumentId, ...] = ()
    foreign_chapter: tuple[DocumentId, ...] = ()
    rival_train: tuple[DocumentId, ...] = ()
    self_train: tuple[DocumentId, ...] = ()


@dataclass(frozen=True, slots=True)
class ExperimentSpec:
    """One study request."""

    name: str
    kind: StudyKind
    n_values: tuple[int, ...] = ()
    feature_modes: tuple[FeatureMode, ...] = ()
    classifiers: tuple[ClassifierKind, ...] = ()
    roles: StudyRoles = field(default_factory=StudyRoles)
    word_frequencies: FrequencyPolicy = FrequencyPolicy.AUTO
    exclude_disputed_from_training: bool = False
    same_author_source: SameAuthorSource = SameAuthorSource.BOTH

    def __post_init__(self) -> None:
        if not self.name:
            raise ExperimentError("Experiment name must be non-empty")
        if self.kind in (StudyKind.NGRAM_INTRA, StudyKind.NGRAM_SUBSTITUTION):
            if not self.n_values:
                raise ExperimentError(f"{self.name}: n-gram studies need n_values")
            if any(n < 1 for n in self.n_values):
                raise ExperimentError(f"{self.name}: every n must be >= 1")
            if len(set(self.n_values)) != len(self.n_values):
                raise ExperimentError(f"{self.name}: duplicate n values")
        if self.kind == StudyKind.NGRAM_SUBSTITUTION and len(self.roles.foreign_chapter) != 1:
            raise ExperimentError(f"{self.name}: substitution needs exactly one foreign_chapter")
        if self.kind == StudyKind.LOO_CLASSIFICATION:
            if not self.classifiers:
                raise ExperimentError(f"{self.name}: classification needs a classifier")
            if not self.feature_modes:
                raise ExperimentError(f"{self.name}: classification needs feature modes")
            labels = [mode.label for mode in self.feature_modes]
            if len(set(labels)) != len(labels):
                raise ExperimentError(f"{self.name}: duplicate feature modes")
            if self.same_author_source == SameAuthorSource.SELF_TRAIN and not self.roles.self_train:
                raise ExperimentError(
                    f"{self.name}: same_author_source self_train needs self_train chapters"
                )
            if self.same_author_source == SameAuthorSource.TARGETS and self.roles.self_train:
                raise ExperimentError(
                    f"{self.name}: self_train chapters are unused with same_author_source targets"
                )

    def to_dict(self) -> dict[str, Any]:
        """Canonical, JSON-ready echo of the spec."""
        return {
            "name": self.name,
            "kind": self.kind.value,
            "n_values": list(self.n_values),
            "feature_modes": [mode.label for mode in self.feature_modes],
            "classifiers": [c.value for c in self.classifiers],
            "roles": {
                "target_work": list(self.roles.target_work),
                "foreign_chapter": list(self.roles.foreign_chapter),
                "rival_train": list(self.roles.rival_train),
                "self_train": list(self.roles.self_train),
            },
            "word_frequencies": self.word_frequencies.value,
            "exclude_disputed_from_training": self.exclude_disputed_from_training,
            "same_author_source": self.same_author_source.value,
        }


@dataclass(frozen=True, slots=True)
class ResultRow:
    """One plotted point: a chapter's value in one series."""

    chapter: DocumentId
    series: str
    value: float
    label: str | None = None  # hard classification label, classification series only


@dataclass(frozen=True, slots=True)
class ResultTable:
    """Rows of one study output plus provenance metadata."""

    rows: tuple[ResultRow, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen: set[tuple[str, str]] = set()
        for row in self.rows:
            key = (row.chapter, row.series)
            if key in seen:
                raise ExperimentError(f"Duplicate row for chapter {row.chapter!r} / {row.series!r}")
            seen.add(key)
            if not math.isfinite(row.value):
                raise ExperimentError(
                    f"Non-finite value for chapter {row.chapter!r} / {row.series!r}"
                )
        object.__setattr__(self, "metadata", MappingProxyType(dict(self.metadata)))

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def series(self) -> tuple[str, ...]:
        """Series labels in first-seen order."""
        return tuple(dict.fromkeys(row.series for row in self.rows))

    def value(self, chapter: str, series: str) -> float:
        for row in self.rows:
            if row.chapter == chapter and row.series == series:
                return row.value
        raise KeyError((chapter, series))

    def with_metadata(self, **extra: Any) -> ResultTable:
        return ResultTable(rows=self.rows, metadata={**self.metadata, **extra})
