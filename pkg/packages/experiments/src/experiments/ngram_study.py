"""Character N-gram distance profiles of the chapters of one work.

★ Texts are truncated to the shortest chapter of the study before counting,
  so a substituted chapter can change the truncation length.
★ The last chapter is the disputed one. Chapters before it are compared
  with each other only; the disputed chapter is compared with all of them.
★ Peer averages are exactly rounded (fsum), so permuting the undisputed
  chapters permutes the rows and changes no value.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

from adapters.numerics.distance import distance_matrix
from core.entities.document import DocumentUnit
from core.entities.experiment import ResultRow, ResultTable
from core.exceptions import EmptyTableError, ExperimentError
from core.use_cases.ngrams import extract_ngram_counts
from core.use_cases.normalization import truncate_to_shortest
from core.use_cases.vectorize import vectorize_relative
from core.use_cases.vocabulary import build_master_list

logger = logging.getLogger("experiments.ngram_study")

MIN_CHAPTERS = 3


def ngram_series(n: int) -> str:
    return f"{n}-gram"


def _check_units(units: Sequence[DocumentUnit], n_values: Sequence[int]) -> None:
    if len(units) < MIN_CHAPTERS:
        raise ExperimentError(
            f"N-gram profile needs at least {MIN_CHAPTERS} chapters, got {len(units)}"
        )
    if not n_values:
        raise ExperimentError("N-gram profile needs at least one n")
    ids = [unit.id for unit in units]
    if len(set(ids)) != len(ids):
        raise ExperimentError(f"Chapter listed twice in study: {ids}")


def run_ngram_intra(
    units: Sequence[DocumentUnit],
    n_values: Sequence[int],
    *,
    strip_punctuation: bool = False,
) -> ResultTable:
    """Average cosine distance of each chapter to its peers, one series per n.

    Raises:
        ExperimentError: Fewer than 3 chapters, no n, or a repeated chapter.
        EmptyTableError: A truncated chapter is shorter than n.
    """
    _check_units(units, n_values)
    truncated = truncate_to_shortest(units)
    length = truncated[0].length
    labels = tuple(unit.id for unit in truncated)
    undisputed = range(len(truncated) - 1)
    logger.info("N-gram profile: %d chapters truncated to %d codepoints", len(labels), length)

    rows: list[ResultRow] = []
    for n in n_values:
        tables = [
            extract_ngram_counts(unit.text, n, strip_punctuation=strip_punctuation)
            for unit in truncated
        ]
        for unit, table in zip(truncated, tables, strict=True):
            if table.total == 0:
                raise EmptyTableError(
                    f"Chapter {unit.id!r} has no {n}-grams after truncation to {length} codepoints"
                )
        space = build_master_list(tables)
        matrix = distance_matrix(labels, [vectorize_relative(table, space) for table in tables])
        series = ngram_series(n)
        rows.extend(
            ResultRow(chapter=label, series=series, value=matrix.peer_average(index, undisputed))
            for index, label in enumerate(labels)
        )
        logger.debug("%s: %d features", series, len(space))
    return ResultTable(rows=tuple(rows), metadata={"truncation_length": length})


def run_ngram_substitution(
    base_units: Sequence[DocumentUnit],
    foreign_unit: DocumentUnit,
    n_values: Sequence[int],
    *,
    strip_punctuation: bool = False,
) -> ResultTable:
    """``run_ngram_intra`` with ``foreign_unit`` as the disputed final chapter."""
    if len(base_units) < MIN_CHAPTERS - 1:
        raise ExperimentError(
            f"Substitution needs at least {MIN_CHAPTERS - 1} base chapters, got {len(base_units)}"
        )
    if any(unit.id == foreign_unit.id for unit in base_units):
        raise ExperimentError(f"Foreign chapter {foreign_unit.id!r} is also a base chapter")
    return run_ngram_intra(
        [*base_units, foreign_unit],
        n_values,
        strip_punctuation=strip_punctuation,
    )
