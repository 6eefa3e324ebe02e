"""Text normalization and length equalization.

★ Canonical composition, diacritics preserved: ἀ and α stay distinct letters.
★ Truncation counts codepoints, never bytes, and only removes a suffix.
"""

from __future__ import annotations

import unicodedata
from collections.abc import Sequence
from dataclasses import replace

from core.entities.document import DocumentUnit
from core.exceptions import CorpusError

_BOM = "\ufeff"


def normalize_text(raw: str) -> str:
    """NFC-normalize ``raw``. Case and accents are kept."""
    return unicodedata.normalize("NFC", raw)


def strip_bom(raw: str) -> str:
    return raw[1:] if raw.startswith(_BOM) else raw


def truncate_to_shortest(units: Sequence[DocumentUnit]) -> list[DocumentUnit]:
    """Cut every text to the codepoint length of the shortest one.

    Order and metadata are unchanged; units already at the minimum length are
    returned as-is. Whitespace counts toward the length, so the gram streams
    of the cut texts can still differ in length.

    Raises:
        CorpusError: If ``units`` is empty.
    """
    if not units:
        raise CorpusError("Cannot truncate an empty list of documents")
    shortest = min(unit.length for unit in units)
    return [
        unit if unit.length == shortest else replace(unit, text=unit.text[:shortest])
        for unit in units
    ]
