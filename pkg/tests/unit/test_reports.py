"""Unit tests for result writers and the model store."""

from __future__ import annotations

import json
from collections.abc import Callable
from pathlib import Path

import pytest
from adapters.numerics.naive_bayes import nbc_train
from adapters.numerics.svm import svm_train
from adapters.reports.model_store import dump_model, load_model, save_model
from adapters.reports.writer import (
    ReportBatch,
    emit_report,
    read_report_json,
    render_csv,
)
from core.entities.experiment import ResultRow, ResultTable
from core.entities.features import FeatureSpace, FeatureVector
from core.entities.models import NBCModel, SVMModel
from core.exceptions import ClassifierError, ExperimentError, SpaceMismatchError
from core.ports.report_writer import ReportFormat, ReportWriter
from core.value_objects import DocumentId


def _table() -> ResultTable:
    return ResultTable(
        rows=(
            ResultRow(DocumentId("cyro.1"), "3-gram", 0.1),
            ResultRow(DocumentId("cyro.2"), "3-gram", 0.22080000000000002),
        ),
        metadata={"experiment": {"name": "intra"}, "toolkit_version": "0.1.0"},
    )


class TestCsv:
    def test_header_plus_rows(self) -> None:
        assert render_csv(_table()).splitlines() == [
            "chapter,series,value",
            "cyro.1,3-gram,0.1",
            "cyro.2,3-gram,0.22080000000000002",
        ]

    def test_full_precision_round_trips(self, tmp_path: Path) -> None:
        path = emit_report(_table(), ReportFormat.CSV, tmp_path / "out.csv")
        last = path.read_text(encoding="utf-8").splitlines()[-1]
        assert float(last.split(",")[-1]) == 0.22080000000000002

    def test_deterministic_bytes(self, tmp_path: Path) -> None:
        first = emit_report(_table(), ReportFormat.CSV, tmp_path / "a.csv").read_bytes()
        second = emit_report(_table(), ReportFormat.CSV, tmp_path / "b.csv").read_bytes()
        assert first == second

    def test_label_not_in_csv(self) -> None:
        table = ResultTable(rows=(ResultRow(DocumentId("c"), "nbc:all", -3.5, label="Xenophon"),))
        assert "Xenophon" not in render_csv(table)


class TestJson:
    def test_round_trip(self, tmp_path: Path) -> None:
        table = ResultTable(
            rows=(ResultRow(DocumentId("c1"), "svm:top50", 0.93, label="Xenophon"),),
            metadata={"config_hash": "abc"},
        )
        path = emit_report(table, ReportFormat.JSON, tmp_path / "out.json")
        assert read_report_json(path) == table

    def test_rows_keep_order_and_label(self, tmp_path: Path) -> None:
        path = emit_report(_table(), ReportFormat.JSON, tmp_path / "t.json")
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert [row["chapter"] for row in payload["rows"]] == ["cyro.1", "cyro.2"]
        assert "label" not in payload["rows"][0]
        assert payload["metadata"]["toolkit_version"] == "0.1.0"

    def test_not_a_report(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.json"
        path.write_text("{}", encoding="utf-8")
        with pytest.raises(ExperimentError):
            read_report_json(path)


class TestReportBatch:
    """All-or-nothing staging."""

    def test_commits_on_success(self, tmp_path: Path) -> None:
        with ReportBatch() as batch:
            batch.write(_table(), ReportFormat.CSV, tmp_path / "a.csv")
            batch.write(_table(), ReportFormat.JSON, tmp_path / "b.json")
            assert not (tmp_path / "a.csv").exists()
        assert (tmp_path / "a.csv").exists()
        assert (tmp_path / "b.json").exists()
        assert batch.committed == (tmp_path / "a.csv", tmp_path / "b.json")

    def test_failure_leaves_nothing(self, tmp_path: Path) -> None:
        with pytest.raises(RuntimeError), ReportBatch() as batch:
            batch.write(_table(), ReportFormat.CSV, tmp_path / "a.csv")
            raise RuntimeError("study failed")
        assert list(tmp_path.iterdir()) == []

    def test_replaces_existing_file(self, tmp_path: Path) -> None:
        target = tmp_path / "a.csv"
        target.write_text("old", encoding="utf-8")
        with ReportBatch() as batch:
            batch.write(_table(), ReportFormat.CSV, target)
        assert target.read_text(encoding="utf-8").startswith("chapter,series,value")

    def test_model_dump_staged_with_tables(self, tmp_path: Path) -> None:
        dump = tmp_path / "models" / "loo" / "a.1.nbc.all.json"
        with pytest.raises(RuntimeError), ReportBatch() as batch:
            writer: ReportWriter = batch
            writer.write_text(dump_model(_nbc()), dump)
            raise RuntimeError("study failed")
        assert not dump.exists()
        with ReportBatch() as batch:
            batch.write_text(dump_model(_nbc()), dump)
        assert load_model(dump, SPACE) == _nbc()


# ═══════════════════════════════════════════════════════════════
# Model store
# ═══════════════════════════════════════════════════════════════

SPACE = FeatureSpace(("καί", "δέ"))


def _nbc() -> NBCModel:
    vectors = [FeatureVector(SPACE, (3.0, 1.0)), FeatureVector(SPACE, (1.0, 3.0))]
    return nbc_train(vectors, ["rival", "same_author"])


def _svm() -> SVMModel:
    vectors = [FeatureVector(SPACE, (0.0, 0.0)), FeatureVector(SPACE, (1.0, 1.0))]
    return svm_train(vectors, [-1, 1], c=10.0)


class TestModelStore:
    @pytest.mark.parametrize("factory", [_nbc, _svm])
    def test_round_trip(self, tmp_path: Path, factory: Callable[[], NBCModel | SVMModel]) -> None:
        model = factory()
        path = save_model(tmp_path / "m" / "model.json", model)
        assert load_model(path, SPACE) == model

    def test_stores_space_hash_not_features(self) -> None:
        payload = json.loads(dump_model(_nbc()))
        assert payload["space"] == {"sha256": SPACE.content_hash(), "size": 2}
        assert "καί" not in dump_model(_nbc())

    def test_other_space_rejected(self, tmp_path: Path) -> None:
        path = save_model(tmp_path / "model.json", _svm())
        with pytest.raises(SpaceMismatchError):
            load_model(path, FeatureSpace(("δέ", "καί")))

    def test_garbage_rejected(self, tmp_path: Path) -> None:
        path = tmp_path / "model.json"
        path.write_text('{"kind": "svm"}', encoding="utf-8")
        with pytest.raises(ClassifierError):
            load_model(path, SPACE)
