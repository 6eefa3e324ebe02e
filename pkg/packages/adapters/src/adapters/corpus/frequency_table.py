"""Word-frequency TSV reader.

Two layouts are accepted, one entry per line, UTF-8, `#` lines ignored:

    word<TAB>freq                       # frequency per 10,000 words
    word<TAB>max<TAB>min<TAB>weighted   # vocabulary-tool export

In the four-column layout ``column`` picks the estimate (weighted by
default). Frequencies are taken as given: lemmatization and ambiguity
weighting happened upstream.
"""

from __future__ import annotations

import logging
import math
from enum import StrEnum
from pathlib import Path

from core.entities.features import WordFrequencyTable
from core.exceptions import FrequencyTableError, MissingDocumentError
from core.use_cases.normalization import normalize_text, strip_bom

logger = logging.getLogger("adapters.corpus.frequency_table")


class FrequencyEstimate(StrEnum):
    """Which estimate of an ambiguous form's frequency to use."""

    WEIGHTED = "weighted"
    MAX = "max"
    MIN = "min"


_FOUR_COLUMN_INDEX = {
    FrequencyEstimate.MAX: 1,
    FrequencyEstimate.MIN: 2,
    FrequencyEstimate.WEIGHTED: 3,
}


def _parse_frequency(raw: str, path: str, line_no: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise FrequencyTableError(path, line_no, f"frequency {raw!r} is not a number") from None
    if not math.isfinite(value):
        raise FrequencyTableError(path, line_no, f"frequency {raw!r} is not finite")
    if value < 0:
        raise FrequencyTableError(path, line_no, f"negative frequency {value}")
    return value


def parse_word_freq_lines(
    lines: list[str],
    *,
    source: str = "<memory>",
    column: FrequencyEstimate = FrequencyEstimate.WEIGHTED,
) -> WordFrequencyTable:
    """Parse TSV lines; ``source`` only labels error messages."""
    entries: dict[str, float] = {}
    for line_no, raw_line in enumerate(lines, start=1):
        line = raw_line.rstrip("\r\n")
        if line_no == 1:
            line = strip_bom(line)
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) == 2:
            raw_freq = fields[1]
        elif len(fields) == 4:
            high = _parse_frequency(fields[1].strip(), source, line_no)
            low = _parse_frequency(fields[2].strip(), source, line_no)
            if low > high:
                raise FrequencyTableError(source, line_no, f"min {low} exceeds max {high}")
            raw_freq = fields[_FOUR_COLUMN_INDEX[column]]
        else:
            raise FrequencyTableError(
                source, line_no, f"expected 2 or 4 tab-separated fields, got {len(fields)}"
            )
        word = normalize_text(fields[0].strip())
        if not word:
            raise FrequencyTableError(source, line_no, "empty word")
        if word in entries:
            raise FrequencyTableError(source, line_no, f"duplicate word {word!r}")
        entries[word] = _parse_frequency(raw_freq.strip(), source, line_no)
    return WordFrequencyTable(entries=entries)


def load_word_freq_table(
    path: Path,
    column: FrequencyEstimate = FrequencyEstimate.WEIGHTED,
) -> WordFrequencyTable:
    """Read one word-frequency TSV file. An empty file yields an empty table.

    Raises:
        MissingDocumentError: File missing or not UTF-8.
        FrequencyTableError: Malformed line or negative frequency (with line number).
    """
    try:
        text = path.read_bytes().decode("utf-8")
    except FileNotFoundError:
        raise MissingDocumentError(f"Frequency table not found: {path}") from None
    except UnicodeDecodeError as exc:
        raise MissingDocumentError(f"Frequency table {path} is not UTF-8: {exc}") from None
    table = parse_word_freq_lines(text.splitlines(), source=str(path), column=column)
    if not table.entries:
        logger.warning("Frequency table %s is empty", path)
    return table


class TsvFrequencySource:
    """FrequencyTableSource over TSV files with a fixed estimate column."""

    def __init__(self, column: FrequencyEstimate = FrequencyEstimate.WEIGHTED) -> None:
        self._column = column

    def load(self, path: Path) -> WordFrequencyTable:
        return load_word_freq_table(path, self._column)
