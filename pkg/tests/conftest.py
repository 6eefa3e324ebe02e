"""Shared test fixtures: synthetic two-author corpora, unit builders.

★ Corpora are generated from a seeded RNG: same seed, same bytes.
★ The two authors use disjoint alphabets and their own function words, so
  every study has a planted, unambiguous signal.
"""

from __future__ import annotations

import json
import random
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest
from core.entities.document import Corpus, DocumentRole, DocumentUnit
from core.value_objects import AuthorLabel, DocumentId, WorkLabel

ALPHABET_A = "abcdefghij"
ALPHABET_B = "klmnopqrst"
FUNCTION_WORDS_A = ("ach", "dei", "bag", "gefa")
FUNCTION_WORDS_B = ("lor", "mos", "tnk", "qrsp")


# ─── Text generation ────────────────────────────────────────


def make_lexicon(rng: random.Random, alphabet: str, size: int) -> list[str]:
    words: dict[str, None] = {}
    while len(words) < size:
        length = rng.randint(3, 7)
        words["".join(rng.choice(alphabet) for _ in range(length))] = None
    return list(words)


def make_text(
    rng: random.Random,
    lexicon: list[str],
    function_words: tuple[str, ...],
    chars: int,
) -> str:
    """Words separated by spaces with sentence punctuation, ~``chars`` long."""
    parts: list[str] = []
    size = 0
    while size < chars:
        word = rng.choice(function_words) if rng.random() < 0.3 else rng.choice(lexicon)
        if rng.random() < 0.08:
            word += rng.choice(".,")
        parts.append(word)
        size += len(word) + 1
    return " ".join(parts)


def author_texts(seed: int, alphabet: str, function_words: tuple[str, ...], count: int, chars: int) -> list[str]:
    rng = random.Random(seed)
    lexicon = make_lexicon(rng, alphabet, 60)
    return [make_text(rng, lexicon, function_words, chars) for _ in range(count)]


# ─── Corpus on disk ─────────────────────────────────────────


CorpusWriter = Callable[..., Path]


@pytest.fixture
def write_corpus(tmp_path: Path) -> CorpusWriter:
    """Factory: write texts plus a manifest, return the manifest path.

    ``documents`` entries are dicts with id/author/work/role/text and an
    optional ``frequencies`` TSV body.
    """

    def _write(documents: list[dict[str, Any]], *, name: str = "manifest.json", **extra: Any) -> Path:
        root = tmp_path / "corpus"
        root.mkdir(exist_ok=True)
        entries: list[dict[str, Any]] = []
        for doc in documents:
            text_path = root / f"{doc['id']}.txt"
            text_path.write_text(doc["text"], encoding="utf-8")
            entry = {key: doc[key] for key in ("id", "author", "work", "role")}
            entry["path"] = text_path.name
            if "frequencies" in doc:
                table_path = root / f"{doc['id']}.tsv"
                table_path.write_text(doc["frequencies"], encoding="utf-8")
                entry["frequencies"] = table_path.name
            entries.append(entry)
        manifest = root / name
        manifest.write_text(json.dumps({"documents": entries, **extra}, indent=2), encoding="utf-8")
        return manifest

    return _write


def two_author_documents(
    *,
    chars: int = 6000,
    targets: int = 8,
    rivals: int = 7,
    seed: int = 7,
) -> list[dict[str, Any]]:
    """Author A's work (role test) followed by author B's (role comparison)."""
    a_texts = author_texts(seed, ALPHABET_A, FUNCTION_WORDS_A, targets, chars)
    b_texts = author_texts(seed + 1, ALPHABET_B, FUNCTION_WORDS_B, rivals, chars)
    docs = [
        {"id": f"a.{i + 1}", "author": "Alpha", "work": "WorkA", "role": "test", "text": text}
        for i, text in enumerate(a_texts)
    ]
    docs += [
        {"id": f"b.{i + 1}", "author": "Beta", "work": "WorkB", "role": "comparison", "text": text}
        for i, text in enumerate(b_texts)
    ]
    return docs


@pytest.fixture
def two_author_manifest(write_corpus: CorpusWriter) -> Path:
    return write_corpus(two_author_documents())


# ─── In-memory units ────────────────────────────────────────


UnitFactory = Callable[..., DocumentUnit]


@pytest.fixture
def make_unit() -> UnitFactory:
    def _make(
        doc_id: str,
        text: str,
        *,
        author: str = "Alpha",
        work: str = "WorkA",
        role: DocumentRole = DocumentRole.TEST,
    ) -> DocumentUnit:
        return DocumentUnit(
            id=DocumentId(doc_id),
            author=AuthorLabel(author),
            work=WorkLabel(work),
            role=role,
            text=text,
        )

    return _make


@pytest.fixture
def two_author_corpus(make_unit: UnitFactory) -> Corpus:
    units = [
        make_unit(
            doc["id"],
            doc["text"],
            author=doc["author"],
            work=doc["work"],
            role=DocumentRole(doc["role"]),
        )
        for doc in two_author_documents()
    ]
    return Corpus(units=tuple(units))


@pytest.fixture
def corpus_documents() -> Callable[..., list[dict[str, Any]]]:
    return two_author_documents
