"""Per-document word-frequency tables under a FrequencyPolicy."""

from __future__ import annotations

import logging
from collections.abc import Sequence

from core.entities.document import DocumentUnit
from core.entities.experiment import FrequencyPolicy
from core.entities.features import WordFrequencyTable
from core.exceptions import ExperimentError
from core.ports.tokenizer import WordTokenizer
from core.use_cases.vocabulary import word_freq_per_10k
from core.value_objects import DocumentId

logger = logging.getLogger("experiments.word_tables")


def _tokenized_table(unit: DocumentUnit, tokenizer: WordTokenizer) -> WordFrequencyTable:
    tokens = tokenizer.tokenize(unit.text)
    if not tokens:
        logger.warning("Document %r has no word tokens", unit.id)
        return WordFrequencyTable()
    return word_freq_per_10k(tokens)


def resolve_word_table(
    unit: DocumentUnit,
    policy: FrequencyPolicy,
    tokenizer: WordTokenizer,
) -> WordFrequencyTable:
    """Ingested table or tokenizer-derived rates, as ``policy`` says.

    Raises:
        ExperimentError: Policy ``tables`` and the document has none.
    """
    if policy == FrequencyPolicy.TOKENIZER:
        return _tokenized_table(unit, tokenizer)
    if unit.word_table is not None:
        return unit.word_table
    if policy == FrequencyPolicy.TABLES:
        raise ExperimentError(f"No word-frequency table for document {unit.id!r}")
    return _tokenized_table(unit, tokenizer)


def resolve_word_tables(
    units: Sequence[DocumentUnit],
    policy: FrequencyPolicy,
    tokenizer: WordTokenizer,
) -> dict[DocumentId, WordFrequencyTable]:
    return {unit.id: resolve_word_table(unit, policy, tokenizer) for unit in units}
