"""Unit tests for leave-one-out classification and the experiment runner.

★ Two synthetic authors with disjoint alphabets: every chapter must be
  attributed to its own author by both classifiers in every feature mode.
★ A rival class made of exact copies of the same-author chapters carries
  no signal: both classifiers land on even odds.
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable

import pytest
from adapters.text.tokenizer import RegexWordTokenizer
from core.entities.document import Corpus, DocumentRole, DocumentUnit
from core.entities.experiment import (
    ClassifierKind,
    ExperimentSpec,
    FeatureMode,
    FrequencyPolicy,
    SameAuthorSource,
    StudyKind,
    StudyRoles,
)
from core.entities.features import WordFrequencyTable
from core.exceptions import (
    ConvergenceError,
    EmptyTableError,
    ExperimentError,
    VocabularyTooSmallError,
)
from core.value_objects import DocumentId
from experiments.loo_study import (
    SAME_AUTHOR,
    classify_chapters,
    resolve_roles,
    run_loo_classification,
    series_label,
    training_set,
)
from experiments.options import StudyOptions
from experiments.runner import config_hash, run_experiment
from experiments.word_tables import resolve_word_tables

UnitFactory = Callable[..., DocumentUnit]

MODES = (FeatureMode(), FeatureMode(50), FeatureMode(75), FeatureMode(100))
BOTH = (ClassifierKind.NBC, ClassifierKind.SVM)


def loo_spec(name: str = "loo", **kwargs: object) -> ExperimentSpec:
    fields: dict[str, object] = {
        "feature_modes": MODES,
        "classifiers": BOTH,
    }
    fields.update(kwargs)
    return ExperimentSpec(name=name, kind=StudyKind.LOO_CLASSIFICATION, **fields)  # type: ignore[arg-type]


def ids(*names: str) -> tuple[DocumentId, ...]:
    return tuple(DocumentId(name) for name in names)


@pytest.fixture
def rival_copy_corpus(two_author_corpus: Corpus, make_unit: UnitFactory) -> Corpus:
    """One target, four self-training chapters and four rivals copying them."""
    a = {unit.id: unit for unit in two_author_corpus.units}
    units = [a["a.1"]]
    units += [make_unit(f"s{i}", a[f"a.{i + 1}"].text) for i in range(1, 5)]
    units += [
        make_unit(f"r{i}", a[f"a.{i + 1}"].text, author="Beta", role=DocumentRole.COMPARISON)
        for i in range(1, 5)
    ]
    return Corpus(units=tuple(units))


def rival_copy_spec(*classifiers: ClassifierKind) -> ExperimentSpec:
    return loo_spec(
        "copy",
        feature_modes=(FeatureMode(),),
        classifiers=classifiers,
        roles=StudyRoles(
            target_work=ids("a.1"),
            self_train=ids("s1", "s2", "s3", "s4"),
            rival_train=ids("r1", "r2", "r3", "r4"),
        ),
    )


# ═══════════════════════════════════════════════════════════════
# Roles
# ═══════════════════════════════════════════════════════════════


class TestResolveRoles:
    def test_falls_back_to_document_roles(self, two_author_corpus: Corpus) -> None:
        roles = resolve_roles(loo_spec(), two_author_corpus)
        assert [u.id for u in roles.targets] == [f"a.{i}" for i in range(1, 9)]
        assert [u.id for u in roles.rivals] == [f"b.{i}" for i in range(1, 8)]
        assert (roles.same_author, roles.rival_author) == ("Alpha", "Beta")

    def test_explicit_roles_win(self, two_author_corpus: Corpus) -> None:
        spec = loo_spec(roles=StudyRoles(target_work=ids("a.2", "a.3"), rival_train=ids("b.7")))
        roles = resolve_roles(spec, two_author_corpus)
        assert [u.id for u in roles.targets] == ["a.2", "a.3"]
        assert [u.id for u in roles.rivals] == ["b.7"]

    def test_chapter_in_two_roles_rejected(self, two_author_corpus: Corpus) -> None:
        spec = loo_spec(roles=StudyRoles(target_work=ids("a.1", "a.2"), rival_train=ids("a.2")))
        with pytest.raises(ExperimentError, match="a.2"):
            resolve_roles(spec, two_author_corpus)

    def test_missing_rivals_rejected(self, two_author_corpus: Corpus) -> None:
        only_targets = Corpus(units=two_author_corpus.with_role(DocumentRole.TEST))
        with pytest.raises(ExperimentError, match="rival"):
            resolve_roles(loo_spec(), only_targets)


# ═══════════════════════════════════════════════════════════════
# Classification
# ═══════════════════════════════════════════════════════════════


class TestPlantedSignal:
    """Every chapter of author A is attributed to author A."""

    def test_every_chapter_correct(self, two_author_corpus: Corpus) -> None:
        table = run_loo_classification(loo_spec(), two_author_corpus)
        assert len(table) == 8 * len(MODES) * len(BOTH)
        for row in table.rows:
            assert row.label == "Alpha", (row.chapter, row.series)
            if row.series.startswith("nbc"):
                assert row.value < math.log(0.5)
            else:
                assert row.value > 0.5

    def test_series_order(self, two_author_corpus: Corpus) -> None:
        table = run_loo_classification(loo_spec(), two_author_corpus)
        expected = tuple(series_label(clf, mode) for mode in MODES for clf in BOTH)
        assert table.series == expected
        assert [row.chapter for row in table.rows[:: len(expected)]] == [f"a.{i}" for i in range(1, 9)]

    def test_metadata_names_authors(self, two_author_corpus: Corpus) -> None:
        table = run_loo_classification(loo_spec(classifiers=(ClassifierKind.NBC,)), two_author_corpus)
        assert table.metadata == {"same_author": "Alpha", "rival_author": "Beta"}

    def test_thread_pool_matches_serial(self, two_author_corpus: Corpus) -> None:
        spec = loo_spec(feature_modes=(FeatureMode(), FeatureMode(50)))
        serial = run_loo_classification(spec, two_author_corpus, StudyOptions(max_workers=1))
        pooled = run_loo_classification(spec, two_author_corpus, StudyOptions(max_workers=4))
        assert pooled == serial


class TestRivalCopies:
    """Rivals identical to the same-author training chapters."""

    def test_nbc_even_odds(self, rival_copy_corpus: Corpus) -> None:
        table = run_loo_classification(rival_copy_spec(ClassifierKind.NBC), rival_copy_corpus)
        assert table.value("a.1", "nbc:all") == pytest.approx(math.log(0.5), abs=1e-9)

    def test_svm_even_odds(self, rival_copy_corpus: Corpus) -> None:
        table = run_loo_classification(rival_copy_spec(ClassifierKind.SVM), rival_copy_corpus)
        assert table.value("a.1", "svm:all") == pytest.approx(0.5, abs=1e-6)


class TestTrainingSets:
    def _train_sizes(self, caplog: pytest.LogCaptureFixture) -> dict[str, int]:
        sizes: dict[str, int] = {}
        for record in caplog.records:
            if record.name != "experiments.pipeline":
                continue
            entry = json.loads(record.getMessage())
            if "chapter" in entry["input"]:
                sizes[entry["input"]["chapter"]] = entry["input"]["train"]
        return sizes

    def test_other_targets_train(self, two_author_corpus: Corpus, caplog: pytest.LogCaptureFixture) -> None:
        caplog.set_level("INFO", logger="experiments.pipeline")
        spec = loo_spec(feature_modes=(FeatureMode(),), classifiers=(ClassifierKind.NBC,))
        run_loo_classification(spec, two_author_corpus)
        sizes = self._train_sizes(caplog)
        assert sizes == {f"a.{i}": 7 + 7 for i in range(1, 9)}

    def test_disputed_chapter_held_out(
        self, two_author_corpus: Corpus, caplog: pytest.LogCaptureFixture
    ) -> None:
        caplog.set_level("INFO", logger="experiments.pipeline")
        spec = loo_spec(
            feature_modes=(FeatureMode(),),
            classifiers=(ClassifierKind.NBC,),
            exclude_disputed_from_training=True,
        )
        run_loo_classification(spec, two_author_corpus)
        sizes = self._train_sizes(caplog)
        assert sizes["a.1"] == 6 + 7
        assert sizes["a.8"] == 7 + 7

    def test_empty_training_table_skipped(
        self, two_author_corpus: Corpus, make_unit: UnitFactory, caplog: pytest.LogCaptureFixture
    ) -> None:
        digits = make_unit("b.0", "123 456 789", author="Beta", role=DocumentRole.COMPARISON)
        corpus = Corpus(units=(*two_author_corpus.units, digits))
        spec = loo_spec(feature_modes=(FeatureMode(),), classifiers=(ClassifierKind.NBC,))
        table = run_loo_classification(spec, corpus)
        assert all(row.label == "Alpha" for row in table.rows)
        assert "b.0" in caplog.text

    def test_empty_test_table_rejected(self, two_author_corpus: Corpus, make_unit: UnitFactory) -> None:
        digits = make_unit("a.0", "123 456 789")
        corpus = Corpus(units=(digits, *two_author_corpus.units))
        with pytest.raises(EmptyTableError, match="a.0"):
            run_loo_classification(loo_spec(), corpus)


TARGETS = ids(*(f"a.{i}" for i in range(1, 9)))
SELF_TRAIN = ids("s1", "s2", "s3", "s4")


@pytest.fixture
def self_train_corpus(two_author_corpus: Corpus, make_unit: UnitFactory) -> Corpus:
    """The two-author corpus plus four extra Alpha chapters for self-training."""
    a = {unit.id: unit for unit in two_author_corpus.units}
    extra = [
        make_unit(f"s{i}", a[f"a.{i}"].text, work="WorkS", role=DocumentRole.TRAIN)
        for i in range(1, 5)
    ]
    return Corpus(units=(*two_author_corpus.units, *extra))


class TestSameAuthorSource:
    def _same_author_ids(
        self, spec: ExperimentSpec, corpus: Corpus
    ) -> dict[str, tuple[DocumentId, ...]]:
        roles = resolve_roles(spec, corpus)
        tables = resolve_word_tables(
            (*roles.targets, *roles.self_train, *roles.rivals),
            FrequencyPolicy.AUTO,
            RegexWordTokenizer(),
        )
        same: dict[str, tuple[DocumentId, ...]] = {}
        for test in roles.targets:
            train_ids, classes = training_set(spec, roles, test, tables)
            pairs = zip(train_ids, classes, strict=True)
            same[test.id] = tuple(doc_id for doc_id, label in pairs if label == SAME_AUTHOR)
        return same

    def _spec(self, source: SameAuthorSource, self_train: tuple[DocumentId, ...]) -> ExperimentSpec:
        return loo_spec(
            feature_modes=(FeatureMode(),),
            classifiers=(ClassifierKind.NBC,),
            roles=StudyRoles(target_work=TARGETS, self_train=self_train),
            same_author_source=source,
        )

    def test_self_train_only(self, self_train_corpus: Corpus) -> None:
        spec = self._spec(SameAuthorSource.SELF_TRAIN, SELF_TRAIN)
        same = self._same_author_ids(spec, self_train_corpus)
        assert [len(ids_) for ids_ in same.values()] == [4] * 8
        assert all(ids_ == SELF_TRAIN for ids_ in same.values())

    def test_targets_only(self, two_author_corpus: Corpus) -> None:
        same = self._same_author_ids(self._spec(SameAuthorSource.TARGETS, ()), two_author_corpus)
        assert same["a.3"] == tuple(doc_id for doc_id in TARGETS if doc_id != "a.3")

    def test_both_is_default(self, self_train_corpus: Corpus) -> None:
        spec = loo_spec(
            feature_modes=(FeatureMode(),),
            classifiers=(ClassifierKind.NBC,),
            roles=StudyRoles(target_work=TARGETS, self_train=SELF_TRAIN),
        )
        assert spec.same_author_source == SameAuthorSource.BOTH
        same = self._same_author_ids(spec, self_train_corpus)
        assert [len(ids_) for ids_ in same.values()] == [7 + 4] * 8

    def test_self_train_classifies(self, self_train_corpus: Corpus) -> None:
        spec = self._spec(SameAuthorSource.SELF_TRAIN, SELF_TRAIN)
        table = run_loo_classification(spec, self_train_corpus)
        assert [row.label for row in table.rows] == ["Alpha"] * 8

    def test_self_train_source_needs_chapters(self) -> None:
        with pytest.raises(ExperimentError, match="self_train"):
            self._spec(SameAuthorSource.SELF_TRAIN, ())

    def test_targets_source_rejects_unused_self_train(self) -> None:
        with pytest.raises(ExperimentError, match="unused"):
            self._spec(SameAuthorSource.TARGETS, SELF_TRAIN)

    def test_source_in_config_hash(self) -> None:
        both = self._spec(SameAuthorSource.BOTH, SELF_TRAIN)
        only = self._spec(SameAuthorSource.SELF_TRAIN, SELF_TRAIN)
        assert both.to_dict()["same_author_source"] == "both"
        assert config_hash(both, StudyOptions()) != config_hash(only, StudyOptions())


class TestWordTablePolicy:
    def test_tables_policy_needs_ingested_tables(self, two_author_corpus: Corpus) -> None:
        spec = loo_spec(word_frequencies=FrequencyPolicy.TABLES)
        with pytest.raises(ExperimentError, match="a.1"):
            run_loo_classification(spec, two_author_corpus)

    def test_ingested_tables_used(self, make_unit: UnitFactory) -> None:
        def unit(doc_id: str, author: str, role: DocumentRole, entries: dict[str, float]) -> DocumentUnit:
            base = make_unit(doc_id, "text ignored by the tables policy", author=author, role=role)
            return DocumentUnit(
                id=base.id,
                author=base.author,
                work=base.work,
                role=base.role,
                text=base.text,
                word_table=WordFrequencyTable(entries=entries),
            )

        corpus = Corpus(
            units=(
                unit("t1", "Alpha", DocumentRole.TEST, {"kai": 300.0, "de": 100.0}),
                unit("t2", "Alpha", DocumentRole.TEST, {"kai": 280.0, "de": 120.0}),
                unit("r1", "Beta", DocumentRole.COMPARISON, {"men": 300.0, "de": 100.0}),
                unit("r2", "Beta", DocumentRole.COMPARISON, {"men": 310.0, "de": 90.0}),
            )
        )
        spec = loo_spec(
            feature_modes=(FeatureMode(),),
            classifiers=(ClassifierKind.NBC,),
            word_frequencies=FrequencyPolicy.TABLES,
        )
        table = run_loo_classification(spec, corpus)
        assert [row.label for row in table.rows] == ["Alpha", "Alpha"]


class TestFailures:
    def test_top_k_beyond_vocabulary(self, two_author_corpus: Corpus) -> None:
        spec = loo_spec(feature_modes=(FeatureMode(100_000),), classifiers=(ClassifierKind.NBC,))
        with pytest.raises(VocabularyTooSmallError):
            run_loo_classification(spec, two_author_corpus)

    def test_svm_iteration_cap(self, two_author_corpus: Corpus) -> None:
        spec = loo_spec(feature_modes=(FeatureMode(),), classifiers=(ClassifierKind.SVM,))
        with pytest.raises(ConvergenceError):
            run_loo_classification(spec, two_author_corpus, StudyOptions(max_iter=1))

    def test_ngram_spec_rejected(self, two_author_corpus: Corpus) -> None:
        spec = ExperimentSpec(name="x", kind=StudyKind.NGRAM_INTRA, n_values=(3,))
        with pytest.raises(ExperimentError):
            run_loo_classification(spec, two_author_corpus)


class TestModelDumps:
    def test_one_model_per_cell(self, two_author_corpus: Corpus) -> None:
        spec = loo_spec(feature_modes=(FeatureMode(50),))
        _, models = classify_chapters(spec, two_author_corpus, StudyOptions(keep_models=True))
        paths = [trained.path for trained in models]
        assert len(set(paths)) == 8 * 2
        assert "loo/a.1.nbc.top50.json" in paths
        assert "loo/a.8.svm.top50.json" in paths

    def test_nothing_kept_by_default(self, two_author_corpus: Corpus) -> None:
        spec = loo_spec(feature_modes=(FeatureMode(50),), classifiers=(ClassifierKind.NBC,))
        _, models = classify_chapters(spec, two_author_corpus)
        assert models == ()

    def test_models_follow_their_output(self, two_author_corpus: Corpus) -> None:
        spec = loo_spec(feature_modes=(FeatureMode(), FeatureMode(50)))
        outputs = run_experiment(spec, two_author_corpus, StudyOptions(keep_models=True))
        for output in outputs:
            assert len(output.models) == 8 * 2
            assert {trained.series for trained in output.models} == set(output.table.series)


# ═══════════════════════════════════════════════════════════════
# Runner
# ═══════════════════════════════════════════════════════════════


class TestRunExperiment:
    """Tests for run_experiment output splitting and metadata."""

    def test_ngram_split_per_n(self, two_author_corpus: Corpus) -> None:
        spec = ExperimentSpec(name="intra", kind=StudyKind.NGRAM_INTRA, n_values=(2, 3, 4))
        outputs = run_experiment(spec, two_author_corpus)
        assert [out.name for out in outputs] == ["intra_2gram", "intra_3gram", "intra_4gram"]
        for out, n in zip(outputs, (2, 3, 4), strict=True):
            assert out.table.series == (f"{n}-gram",)
            assert len(out.table) == 8

    def test_substitution_uses_foreign_chapter(self, two_author_corpus: Corpus) -> None:
        spec = ExperimentSpec(
            name="sub",
            kind=StudyKind.NGRAM_SUBSTITUTION,
            n_values=(3,),
            roles=StudyRoles(target_work=ids("a.1", "a.2", "a.3", "a.4"), foreign_chapter=ids("b.1")),
        )
        (output,) = run_experiment(spec, two_author_corpus)
        assert [row.chapter for row in output.table.rows] == ["a.1", "a.2", "a.3", "a.4", "b.1"]

    def test_loo_split_per_mode(self, two_author_corpus: Corpus) -> None:
        outputs = run_experiment(loo_spec(), two_author_corpus)
        assert [out.name for out in outputs] == ["loo_all", "loo_top50", "loo_top75", "loo_top100"]
        assert sum(len(out.table.series) for out in outputs) == 8
        assert outputs[1].table.series == ("nbc:top50", "svm:top50")

    def test_metadata(self, two_author_corpus: Corpus) -> None:
        spec = ExperimentSpec(name="intra", kind=StudyKind.NGRAM_INTRA, n_values=(3,))
        options = StudyOptions()
        (output,) = run_experiment(spec, two_author_corpus, options)
        metadata = output.table.metadata
        assert metadata["experiment"] == spec.to_dict()
        assert metadata["config_hash"] == config_hash(spec, options)
        assert metadata["options"]["strip_punctuation"] is False
        assert "toolkit_version" in metadata
        assert "truncation_length" in metadata


class TestConfigHash:
    def test_stable(self) -> None:
        spec = loo_spec()
        assert config_hash(spec, StudyOptions()) == config_hash(spec, StudyOptions())

    def test_numeric_option_changes_hash(self) -> None:
        spec = loo_spec()
        assert config_hash(spec, StudyOptions()) != config_hash(spec, StudyOptions(alpha=0.5))

    def test_execution_options_do_not_change_hash(self) -> None:
        spec = loo_spec()
        busy = StudyOptions(max_workers=4, keep_models=True, run_id="abc")
        assert config_hash(spec, StudyOptions()) == config_hash(spec, busy)
