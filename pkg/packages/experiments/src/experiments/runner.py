"""Experiment runner: one spec in, named result tables out.

★ N-gram studies yield one table per n, classification one per feature mode:
  each table becomes one result file.
★ Metadata echoes the spec, the toolkit version and a SHA-256 over the spec
  and every numeric option, so identical inputs give identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass

from core import __version__
from core.entities.document import Corpus, DocumentRole
from core.entities.experiment import ExperimentSpec, ResultTable, StudyKind
from core.exceptions import ExperimentError
from core.ports.tokenizer import WordTokenizer
from experiments.loo_study import TrainedModel, classify_chapters, series_label
from experiments.ngram_study import ngram_series, run_ngram_intra, run_ngram_substitution
from experiments.observability import study_step
from experiments.options import StudyOptions

logger = logging.getLogger("experiments.runner")


@dataclass(frozen=True, slots=True)
class StudyOutput:
    """One result table, the file stem it is written under, and its trained models."""

    name: str
    table: ResultTable
    models: tuple[TrainedModel, ...] = ()


def config_hash(spec: ExperimentSpec, options: StudyOptions) -> str:
    canonical = json.dumps(
        {"spec": spec.to_dict(), "options": options.numeric_config()},
        sort_keys=True,
        ensure_ascii=False,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _run_ngram(spec: ExperimentSpec, corpus: Corpus, options: StudyOptions) -> ResultTable:
    roles = spec.roles
    base = corpus.select(roles.target_work) if roles.target_work else corpus.with_role(DocumentRole.TEST)
    if spec.kind == StudyKind.NGRAM_INTRA:
        return run_ngram_intra(base, spec.n_values, strip_punctuation=options.strip_punctuation)
    foreign = corpus.by_id(roles.foreign_chapter[0])
    return run_ngram_substitution(
        base, foreign, spec.n_values, strip_punctuation=options.strip_punctuation
    )


def _split(spec: ExperimentSpec, table: ResultTable) -> list[tuple[str, tuple[str, ...]]]:
    """(output name, series in it) pairs."""
    if spec.kind == StudyKind.LOO_CLASSIFICATION:
        return [
            (
                f"{spec.name}_{mode.label}",
                tuple(series_label(classifier, mode) for classifier in spec.classifiers),
            )
            for mode in spec.feature_modes
        ]
    return [(f"{spec.name}_{n}gram", (ngram_series(n),)) for n in spec.n_values]


def run_experiment(
    spec: ExperimentSpec,
    corpus: Corpus,
    options: StudyOptions | None = None,
    tokenizer: WordTokenizer | None = None,
) -> list[StudyOutput]:
    """Run one study and split its table into per-file outputs.

    Raises:
        StylometryError: Whatever the study raises.
    """
    options = options or StudyOptions()
    models: tuple[TrainedModel, ...] = ()
    with study_step(options.run_id, spec.name, "study", {"kind": spec.kind.value}) as summary:
        if spec.kind == StudyKind.LOO_CLASSIFICATION:
            table, models = classify_chapters(spec, corpus, options, tokenizer)
        else:
            table = _run_ngram(spec, corpus, options)
        summary["rows"] = len(table)

    metadata = {
        **table.metadata,
        "experiment": spec.to_dict(),
        "toolkit_version": __version__,
        "config_hash": config_hash(spec, options),
        "options": options.numeric_config(),
    }
    outputs: list[StudyOutput] = []
    for name, series in _split(spec, table):
        rows = tuple(row for row in table.rows if row.series in series)
        if not rows:
            raise ExperimentError(f"{spec.name}: no rows for {name}")
        outputs.append(
            StudyOutput(
                name=name,
                table=ResultTable(rows=rows, metadata=metadata),
                models=tuple(model for model in models if model.series in series),
            )
        )
    logger.info("%s: %d outputs", spec.name, len(outputs))
    return outputs
