"""Manifest loader: JSON manifest of chapter files → normalized Corpus.

Manifest shape::

    {
      "normalization": "nfc_preserve_diacritics",
      "frequency_column": "weighted",            # optional
      "documents": [
        {"id": "cyro.1", "author": "Xenophon", "work": "Cyropaedia",
         "role": "test", "path": "cyro/1.txt",
         "frequencies": "cyro/1.tsv"}            # optional
      ]
    }

★ Paths are resolved relative to the manifest's directory.
★ Every failure names the offending entry.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from adapters.corpus.frequency_table import FrequencyEstimate, TsvFrequencySource
from core.entities.document import Corpus, DocumentRole, DocumentUnit, NormalizationPolicy
from core.exceptions import (
    DuplicateDocumentError,
    EmptyDocumentError,
    ManifestError,
    MissingDocumentError,
)
from core.ports.corpus_source import FrequencyTableSource
from core.use_cases.normalization import normalize_text, strip_bom
from core.value_objects import AuthorLabel, DocumentId, WorkLabel

logger = logging.getLogger("adapters.corpus.manifest")


class ManifestDocument(BaseModel):
    """One manifest entry."""

    model_config = ConfigDict(extra="forbid")

    id: str = Field(min_length=1)
    author: str = Field(min_length=1)
    work: str = Field(min_length=1)
    role: DocumentRole
    path: str = Field(min_length=1)
    frequencies: str | None = None


class ManifestFile(BaseModel):
    """Whole manifest document."""

    model_config = ConfigDict(extra="forbid")

    normalization: NormalizationPolicy = NormalizationPolicy.NFC_PRESERVE_DIACRITICS
    frequency_column: FrequencyEstimate = FrequencyEstimate.WEIGHTED
    documents: list[ManifestDocument] = Field(min_length=1)


def _describe_validation_error(exc: ValidationError, payload: Any) -> str:
    """Point at the failing entry by index and id where possible."""
    first = exc.errors()[0]
    loc = first.get("loc", ())
    where = ".".join(str(part) for part in loc) or "<root>"
    if len(loc) >= 2 and loc[0] == "documents" and isinstance(loc[1], int):
        try:
            entry_id = payload["documents"][loc[1]].get("id")
        except (KeyError, IndexError, TypeError, AttributeError):
            entry_id = None
        if entry_id:
            where = f"{where} (document {entry_id!r})"
    return f"{where}: {first.get('msg', 'invalid value')}"


def parse_manifest(manifest_path: Path) -> ManifestFile:
    """Read and validate the manifest JSON without touching the text files."""
    try:
        raw = manifest_path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise MissingDocumentError(f"Manifest not found: {manifest_path}") from None
    try:
        payload = json.loads(strip_bom(raw))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{manifest_path}: not valid JSON ({exc})") from None
    try:
        manifest = ManifestFile.model_validate(payload)
    except ValidationError as exc:
        detail = _describe_validation_error(exc, payload)
        raise ManifestError(f"{manifest_path}: {detail}") from None

    seen: set[str] = set()
    for entry in manifest.documents:
        if entry.id in seen:
            raise DuplicateDocumentError(f"{manifest_path}: duplicate document id {entry.id!r}")
        seen.add(entry.id)
    return manifest


def _read_text(path: Path, doc_id: str) -> str:
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        raise MissingDocumentError(f"Document {doc_id!r}: text file not found: {path}") from None
    except IsADirectoryError:
        raise MissingDocumentError(f"Document {doc_id!r}: {path} is a directory") from None
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MissingDocumentError(
            f"Document {doc_id!r}: {path} does not decode as UTF-8 ({exc})"
        ) from None


def load_manifest(manifest_path: Path) -> Corpus:
    """Load every manifest entry into a normalized Corpus, in manifest order.

    Raises:
        MissingDocumentError: Manifest, text or table file missing / not UTF-8.
        ManifestError: Malformed manifest.
        DuplicateDocumentError: Two entries share an id.
        EmptyDocumentError: A text is empty after normalization.
        FrequencyTableError: A referenced frequency table is malformed.
    """
    manifest = parse_manifest(manifest_path)
    base_dir = manifest_path.parent
    tables: FrequencyTableSource = TsvFrequencySource(manifest.frequency_column)
    units: list[DocumentUnit] = []
    for entry in manifest.documents:
        text_path = base_dir / entry.path
        text = normalize_text(strip_bom(_read_text(text_path, entry.id)))
        if not text:
            raise EmptyDocumentError(f"Document {entry.id!r}: {text_path} is empty")
        word_table = None
        if entry.frequencies is not None:
            word_table = tables.load(base_dir / entry.frequencies)
        units.append(
            DocumentUnit(
                id=DocumentId(entry.id),
                author=AuthorLabel(entry.author),
                work=WorkLabel(entry.work),
                role=entry.role,
                text=text,
                word_table=word_table,
            )
        )
    corpus = Corpus(units=tuple(units), normalization_policy=manifest.normalization)
    logger.info("Loaded corpus %s: %d documents", manifest_path, len(corpus))
    return corpus


class ManifestCorpusSource:
    """CorpusSource backed by a JSON manifest on disk."""

    def load(self, manifest_path: Path) -> Corpus:
        return load_manifest(manifest_path)
