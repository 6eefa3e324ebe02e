"""Unit tests for settings and run configuration."""

from __future__ import annotations

from pathlib import Path

import pytest
from core.entities.experiment import FeatureMode
from core.ports.report_writer import ReportFormat
from interface.config import IngestConfig, RunConfig, StylometrySettings
from pydantic import ValidationError


def run_config(tmp_path: Path, **overrides: object) -> RunConfig:
    manifest = tmp_path / "manifest.json"
    spec = tmp_path / "spec.json"
    manifest.write_text("{}", encoding="utf-8")
    spec.write_text("{}", encoding="utf-8")
    fields: dict[str, object] = {
        "manifest": manifest,
        "spec": spec,
        "out": tmp_path / "out",
        "n_values": [2, 3, 4],
        "top_k": [50, 75, 100],
        "alpha": 1.0,
        "c": 1.0,
        "tol": 1e-3,
        "max_iter": 1000,
    }
    fields.update(overrides)
    return RunConfig(**fields)  # type: ignore[arg-type]


class TestStylometrySettings:
    def test_defaults(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv("STYLO_N_VALUES", raising=False)
        settings = StylometrySettings(_env_file=None)  # type: ignore[call-arg]
        assert settings.n_values == [2, 3, 4]
        assert settings.top_k == [50, 75, 100]
        assert settings.output_format == ReportFormat.CSV

    def test_environment_override(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("STYLO_N_VALUES", "[3, 5]")
        monkeypatch.setenv("STYLO_SVM_C", "10")
        monkeypatch.setenv("STYLO_OUTPUT_FORMAT", "json")
        settings = StylometrySettings(_env_file=None)  # type: ignore[call-arg]
        assert settings.n_values == [3, 5]
        assert settings.svm_c == 10.0
        assert settings.output_format == ReportFormat.JSON

    def test_invalid_alpha_rejected(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("STYLO_ALPHA", "0")
        with pytest.raises(ValidationError):
            StylometrySettings(_env_file=None)  # type: ignore[call-arg]


class TestRunConfig:
    def test_feature_modes_start_with_all(self, tmp_path: Path) -> None:
        config = run_config(tmp_path, top_k=[75, 50, 75])
        assert config.feature_modes() == (FeatureMode(), FeatureMode(75), FeatureMode(50))

    def test_to_options(self, tmp_path: Path) -> None:
        options = run_config(tmp_path, alpha=0.5, max_workers=3).to_options("run-1")
        assert options.alpha == 0.5
        assert options.max_workers == 3
        assert options.run_id == "run-1"
        assert options.keep_models is False

    def test_model_dir_keeps_models(self, tmp_path: Path) -> None:
        options = run_config(tmp_path, model_dir=tmp_path / "models").to_options("run-1")
        assert options.keep_models is True

    def test_missing_manifest_rejected(self, tmp_path: Path) -> None:
        with pytest.raises(ValidationError, match="manifest"):
            run_config(tmp_path, manifest=tmp_path / "nope.json")

    @pytest.mark.parametrize(
        "overrides",
        [{"n_values": []}, {"n_values": [0]}, {"c": 0.0}, {"tol": -1.0}, {"max_iter": 0}, {"max_workers": 0}],
    )
    def test_bad_values_rejected(self, tmp_path: Path, overrides: dict[str, object]) -> None:
        with pytest.raises(ValidationError):
            run_config(tmp_path, **overrides)

    def test_unknown_field_rejected(self, tmp_path: Path) -> None:
        with pytest.raises(ValidationError):
            run_config(tmp_path, gamma=1.0)

    def test_frozen(self, tmp_path: Path) -> None:
        config = run_config(tmp_path)
        with pytest.raises(ValidationError):
            config.alpha = 2.0  # type: ignore[misc]


class TestIngestConfig:
    def test_existing_manifest(self, tmp_path: Path) -> None:
        manifest = tmp_path / "m.json"
        manifest.write_text("{}", encoding="utf-8")
        assert IngestConfig(manifest=manifest).manifest == manifest
