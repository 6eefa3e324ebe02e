"""Application configuration via Pydantic Settings.

Settings come from ``STYLO_*`` environment variables (or ``.env``); CLI flags
override them and the merged values are validated once as a RunConfig.
"""
from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, FilePath
from pydantic_settings import BaseSettings, SettingsConfigDict

from core.entities.experiment import FeatureMode
from core.ports.report_writer import ReportFormat
from experiments.options import StudyOptions

PositiveInt = Annotated[int, Field(ge=1)]


class StylometrySettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="STYLO_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )
    log_level: str = Field(default="INFO")
    log_json: bool = Field(default=False)
    n_values: list[PositiveInt] = Field(default_factory=lambda: [2, 3, 4], min_length=1)
    top_k: list[PositiveInt] = Field(default_factory=lambda: [50, 75, 100])
    alpha: float = Field(default=1.0, gt=0)
    svm_c: float = Field(default=1.0, gt=0)
    svm_tol: float = Field(default=1e-3, gt=0)
    svm_max_iter: int = Field(default=100_000, ge=1)
    strip_punctuation: bool = Field(default=False)
    output_format: ReportFormat = Field(default=ReportFormat.CSV)
    max_workers: int = Field(default=1, ge=1, le=64)


@lru_cache(maxsize=1)
def get_settings() -> StylometrySettings:
    return StylometrySettings()


class RunConfig(BaseModel):
    """Everything ``stylo run`` needs, validated before any work starts."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    manifest: FilePath
    spec: FilePath
    out: Path
    report_format: ReportFormat = ReportFormat.CSV
    n_values: list[PositiveInt] = Field(min_length=1)
    top_k: list[PositiveInt]
    alpha: float = Field(gt=0)
    c: float = Field(gt=0)
    tol: float = Field(gt=0)
    max_iter: int = Field(ge=1)
    strip_punctuation: bool = False
    max_workers: int = Field(default=1, ge=1, le=64)
    model_dir: Path | None = None

    def feature_modes(self) -> tuple[FeatureMode, ...]:
        """All words, then each top-k in the given order."""
        return (FeatureMode(), *(FeatureMode(k) for k in dict.fromkeys(self.top_k)))

    def to_options(self, run_id: str) -> StudyOptions:
        return StudyOptions(
            alpha=self.alpha,
            c=self.c,
            tol=self.tol,
            max_iter=self.max_iter,
            strip_punctuation=self.strip_punctuation,
            max_workers=self.max_workers,
            keep_models=self.model_dir is not None,
            run_id=run_id,
        )


class IngestConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    manifest: FilePath

