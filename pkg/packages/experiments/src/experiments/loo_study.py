"""Leave-one-chapter-out authorship classification.

Each target chapter in turn is the test text. The rival chapters form the
rival class; the same-author class is the other target chapters, the
``self_train`` chapters, or both, as ``ExperimentSpec.same_author_source`` selects.

★ The word space is built over training AND test tables: the master list
  for "all", the most common words for "topK".
★ NBC reports the log posterior of the rival class; SVM reports the Platt
  probability of the same-author class, with the scaler fit on training
  vectors only.
★ Every row carries the author of the winning class; it agrees with the
  reported value by construction.
★ (chapter × feature mode) cells are independent; with max_workers > 1 they
  run on a thread pool and are merged back in target/mode order.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from adapters.numerics.naive_bayes import nbc_predict, nbc_predict_log_proba, nbc_train
from adapters.numerics.scaling import scaler_fit, scaler_transform
from adapters.numerics.svm import svm_predict, svm_predict_proba, svm_train
from adapters.text.tokenizer import RegexWordTokenizer
from core.entities.document import Corpus, DocumentRole, DocumentUnit
from core.entities.experiment import (
    ClassifierKind,
    ExperimentSpec,
    FeatureMode,
    ResultRow,
    ResultTable,
    SameAuthorSource,
    StudyKind,
)
from core.entities.features import FeatureSpace, FeatureVector, WordFrequencyTable
from core.entities.models import NBCModel, SVMModel
from core.exceptions import EmptyTableError, ExperimentError
from core.ports.tokenizer import WordTokenizer
from core.use_cases.vectorize import vectorize_frequencies
from core.use_cases.vocabulary import build_master_list, select_top_n
from core.value_objects import DocumentId
from experiments.observability import study_step
from experiments.options import StudyOptions
from experiments.word_tables import resolve_word_tables

logger = logging.getLogger("experiments.loo_study")

SAME_AUTHOR = "same_author"
RIVAL = "rival"


def series_label(classifier: ClassifierKind, mode: FeatureMode) -> str:
    return f"{classifier.value}:{mode.label}"


# ── Roles ─────────────────────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class LooRoles:
    """Resolved chapters of a classification study."""

    targets: tuple[DocumentUnit, ...]
    self_train: tuple[DocumentUnit, ...]
    rivals: tuple[DocumentUnit, ...]
    same_author: str
    rival_author: str


def _author_name(units: Sequence[DocumentUnit]) -> str:
    return "+".join(dict.fromkeys(unit.author for unit in units))


def _same_author_units(
    spec: ExperimentSpec,
    targets: Sequence[DocumentUnit],
    self_train: Sequence[DocumentUnit],
) -> tuple[DocumentUnit, ...]:
    if spec.same_author_source == SameAuthorSource.TARGETS:
        return tuple(targets)
    if spec.same_author_source == SameAuthorSource.SELF_TRAIN:
        return tuple(self_train)
    return (*targets, *self_train)


def resolve_roles(spec: ExperimentSpec, corpus: Corpus) -> LooRoles:
    """Targets default to role ``test``, rivals to role ``comparison``.

    Raises:
        ExperimentError: No targets, no rivals, or a chapter in two roles.
        CorpusError: Unknown document id.
    """
    roles = spec.roles
    targets = corpus.select(roles.target_work) if roles.target_work else corpus.with_role(DocumentRole.TEST)
    rivals = corpus.select(roles.rival_train) if roles.rival_train else corpus.with_role(DocumentRole.COMPARISON)
    self_train = corpus.select(roles.self_train)
    if not targets:
        raise ExperimentError(f"{spec.name}: no target chapters (give target_work or role 'test')")
    if not rivals:
        raise ExperimentError(f"{spec.name}: no rival chapters (give rival_train or role 'comparison')")
    seen: set[str] = set()
    for unit in (*targets, *self_train, *rivals):
        if unit.id in seen:
            raise ExperimentError(f"{spec.name}: chapter {unit.id!r} appears in more than one role")
        seen.add(unit.id)
    return LooRoles(
        targets=targets,
        self_train=self_train,
        rivals=rivals,
        same_author=_author_name(_same_author_units(spec, targets, self_train)),
        rival_author=_author_name(rivals),
    )


# ── Cells ─────────────────────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class _Cell:
    test: DocumentUnit
    mode: FeatureMode
    train_ids: tuple[DocumentId, ...]
    train_classes: tuple[str, ...]


def training_set(
    spec: ExperimentSpec,
    roles: LooRoles,
    test: DocumentUnit,
    tables: dict[DocumentId, WordFrequencyTable],
) -> tuple[tuple[DocumentId, ...], tuple[str, ...]]:
    """Training ids and their class labels for one test chapter, empty tables dropped.

    Raises:
        ExperimentError: Either class ends up empty.
    """
    disputed = roles.targets[-1].id
    same: list[DocumentId] = []
    if spec.same_author_source != SameAuthorSource.SELF_TRAIN:
        same.extend(
            unit.id
            for unit in roles.targets
            if unit.id != test.id
            and not (spec.exclude_disputed_from_training and unit.id == disputed)
        )
    if spec.same_author_source != SameAuthorSource.TARGETS:
        same.extend(unit.id for unit in roles.self_train)
    rival = [unit.id for unit in roles.rivals]

    ids: list[DocumentId] = []
    classes: list[str] = []
    for doc_id, label in [*((d, SAME_AUTHOR) for d in same), *((d, RIVAL) for d in rival)]:
        if len(tables[doc_id]) == 0:
            logger.warning("Excluding %r from training of %r: empty word table", doc_id, test.id)
            continue
        ids.append(doc_id)
        classes.append(label)
    if SAME_AUTHOR not in classes or RIVAL not in classes:
        raise ExperimentError(
            f"{spec.name}: training for chapter {test.id!r} lacks a same-author or rival chapter"
        )
    return tuple(ids), tuple(classes)


def _feature_space(mode: FeatureMode, tables: Sequence[WordFrequencyTable]) -> FeatureSpace:
    if mode.top_k is None:
        return build_master_list(tables)
    return select_top_n(tables, mode.top_k)


@dataclass(frozen=True, slots=True)
class TrainedModel:
    """A classifier fitted for one cell, with its dump path relative to the model dir."""

    path: str
    series: str
    model: NBCModel | SVMModel


def _model_path(spec: ExperimentSpec, cell: _Cell, classifier: ClassifierKind) -> str:
    return f"{spec.name}/{cell.test.id}.{classifier.value}.{cell.mode.label}.json"


def _run_cell(
    spec: ExperimentSpec,
    roles: LooRoles,
    cell: _Cell,
    tables: dict[DocumentId, WordFrequencyTable],
    options: StudyOptions,
) -> tuple[list[ResultRow], list[TrainedModel]]:
    author_of = {SAME_AUTHOR: roles.same_author, RIVAL: roles.rival_author}
    train_tables = [tables[doc_id] for doc_id in cell.train_ids]
    test_table = tables[cell.test.id]
    space = _feature_space(cell.mode, [*train_tables, test_table])
    train_vectors = [vectorize_frequencies(table, space) for table in train_tables]
    test_vector = vectorize_frequencies(test_table, space)

    rows: list[ResultRow] = []
    models: list[TrainedModel] = []
    for classifier in spec.classifiers:
        series = series_label(classifier, cell.mode)
        with study_step(
            options.run_id,
            spec.name,
            series,
            {"chapter": cell.test.id, "train": len(cell.train_ids), "features": len(space)},
        ) as output:
            model: NBCModel | SVMModel
            if classifier == ClassifierKind.NBC:
                row, model = _nbc_row(cell, series, train_vectors, test_vector, options, author_of)
            else:
                row, model = _svm_row(cell, series, train_vectors, test_vector, options, author_of)
            output.update({"value": row.value, "label": row.label})
        if options.keep_models:
            models.append(TrainedModel(_model_path(spec, cell, classifier), series, model))
        rows.append(row)
    return rows, models


def _nbc_row(
    cell: _Cell,
    series: str,
    train_vectors: list[FeatureVector],
    test_vector: FeatureVector,
    options: StudyOptions,
    author_of: dict[str, str],
) -> tuple[ResultRow, NBCModel]:
    model = nbc_train(train_vectors, cell.train_classes, alpha=options.alpha)
    log_posterior = nbc_predict_log_proba(model, test_vector)
    winner = nbc_predict(model, test_vector)
    row = ResultRow(
        chapter=cell.test.id,
        series=series,
        value=log_posterior[RIVAL],
        label=author_of[winner],
    )
    return row, model


def _svm_row(
    cell: _Cell,
    series: str,
    train_vectors: list[FeatureVector],
    test_vector: FeatureVector,
    options: StudyOptions,
    author_of: dict[str, str],
) -> tuple[ResultRow, SVMModel]:
    scaler = scaler_fit(train_vectors)
    scaled_train = [scaler_transform(scaler, vector) for vector in train_vectors]
    scaled_test = scaler_transform(scaler, test_vector)
    labels = [1 if label == SAME_AUTHOR else -1 for label in cell.train_classes]
    model = svm_train(scaled_train, labels, c=options.c, tol=options.tol, max_iter=options.max_iter)
    probability = svm_predict_proba(model, scaled_test)
    winner = SAME_AUTHOR if svm_predict(model, scaled_test) == 1 else RIVAL
    row = ResultRow(chapter=cell.test.id, series=series, value=probability, label=author_of[winner])
    return row, model


# ── Study ─────────────────────────────────────────────────────────────────────


def run_loo_classification(
    spec: ExperimentSpec,
    corpus: Corpus,
    options: StudyOptions | None = None,
    tokenizer: WordTokenizer | None = None,
) -> ResultTable:
    """Result table of :func:`classify_chapters`."""
    table, _ = classify_chapters(spec, corpus, options, tokenizer)
    return table


def classify_chapters(
    spec: ExperimentSpec,
    corpus: Corpus,
    options: StudyOptions | None = None,
    tokenizer: WordTokenizer | None = None,
) -> tuple[ResultTable, tuple[TrainedModel, ...]]:
    """Classify every target chapter with every classifier and feature mode.

    Trained models come back only when ``options.keep_models`` is set.

    Raises:
        ExperimentError: Bad roles, missing table under policy ``tables``,
            or a training set without both classes.
        EmptyTableError: A test chapter has an empty word table.
        VocabularyTooSmallError: top_k exceeds the vocabulary.
        ConvergenceError: SVM did not converge within max_iter.
    """
    if spec.kind != StudyKind.LOO_CLASSIFICATION:
        raise ExperimentError(f"{spec.name}: not a classification study ({spec.kind})")
    options = options or StudyOptions()
    roles = resolve_roles(spec, corpus)
    tables = resolve_word_tables(
        (*roles.targets, *roles.self_train, *roles.rivals),
        spec.word_frequencies,
        tokenizer or RegexWordTokenizer(),
    )

    cells: list[_Cell] = []
    for test in roles.targets:
        if len(tables[test.id]) == 0:
            raise EmptyTableError(f"Test chapter {test.id!r} has an empty word table")
        train_ids, train_classes = training_set(spec, roles, test, tables)
        cells.extend(_Cell(test, mode, train_ids, train_classes) for mode in spec.feature_modes)
    logger.info(
        "%s: %d test chapters x %d modes x %d classifiers",
        spec.name,
        len(roles.targets),
        len(spec.feature_modes),
        len(spec.classifiers),
    )

    if options.max_workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=options.max_workers) as pool:
            results = list(pool.map(lambda cell: _run_cell(spec, roles, cell, tables, options), cells))
    else:
        results = [_run_cell(spec, roles, cell, tables, options) for cell in cells]

    rows = [row for cell_rows, _ in results for row in cell_rows]
    models = [model for _, cell_models in results for model in cell_models]
    table = ResultTable(
        rows=tuple(rows),
        metadata={"same_author": roles.same_author, "rival_author": roles.rival_author},
    )
    return table, tuple(models)
