"""Document entities: labeled chapters and the corpus that orders them.

★ A chapter is the unit of study: every experiment treats one chapter at a
  time as the test text.
★ Immutable: units are never edited in place; truncation returns new units.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import TYPE_CHECKING

from core.exceptions import CorpusError, DuplicateDocumentError, EmptyDocumentError
from core.value_objects import AuthorLabel, DocumentId, WorkLabel

if TYPE_CHECKING:
    from collections.abc import Iterable

    from core.entities.features import WordFrequencyTable


class DocumentRole(StrEnum):
    """Role a chapter plays in the manifest."""

    TRAIN = "train"
    TEST = "test"
    COMPARISON = "comparison"


class NormalizationPolicy(StrEnum):
    """Unicode policy applied to every text of a corpus."""

    NFC_PRESERVE_DIACRITICS = "nfc_preserve_diacritics"


@dataclass(frozen=True, slots=True)
class DocumentUnit:
    """One labeled chapter of normalized text."""

    id: DocumentId
    author: AuthorLabel
    work: WorkLabel
    role: DocumentRole
    text: str
    # Precomputed per-10k word frequencies, when the manifest supplies them.
    word_table: WordFrequencyTable | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusError("Document id must be non-empty")
        if not self.text:
            raise EmptyDocumentError(f"Document {self.id!r} is empty after normalization")

    @property
    def length(self) -> int:
        """Codepoint length of the text."""
        return len(self.text)


@dataclass(frozen=True, slots=True)
class Corpus:
    """Ordered, id-unique collection of chapters under one normalization policy."""

    units: tuple[DocumentUnit, ...]
    normalization_policy: NormalizationPolicy = NormalizationPolicy.NFC_PRESERVE_DIACRITICS

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for unit in self.units:
            if unit.id in seen:
                raise DuplicateDocumentError(f"Duplicate document id {unit.id!r}")
            seen.add(unit.id)

    def __len__(self) -> int:
        return len(self.units)

    @property
    def ids(self) -> tuple[DocumentId, ...]:
        return tuple(unit.id for unit in self.units)

    def by_id(self, doc_id: str) -> DocumentUnit:
        for unit in self.units:
            if unit.id == doc_id:
                return unit
        raise CorpusError(f"Unknown document id {doc_id!r}")

    def select(self, ids: Iterable[str]) -> tuple[DocumentUnit, ...]:
        """Units for ``ids`` in the order given."""
        return tuple(self.by_id(doc_id) for doc_id in ids)

    def with_role(self, role: DocumentRole) -> tuple[DocumentUnit, ...]:
        return tuple(unit for unit in self.units if unit.role == role)
