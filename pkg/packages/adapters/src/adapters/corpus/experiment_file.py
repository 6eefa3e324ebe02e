"""Experiment spec file reader: JSON → validated ExperimentSpec list.

A file holds one experiment object or ``{"experiments": [...]}``::

    {
      "name": "cyro_vs_meta",
      "kind": "loo_classification",
      "feature_modes": ["all", "top50", "top75", "top100"],
      "classifiers": ["nbc", "svm"],
      "roles": {"target_work": ["cyro.1", "..."], "rival_train": ["meta.1", "..."]}
    }

Missing n_values / feature_modes / classifiers fall back to the defaults
passed in by the caller (the CLI passes its settings).
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from core.entities.experiment import (
    ClassifierKind,
    ExperimentSpec,
    FeatureMode,
    FrequencyPolicy,
    SameAuthorSource,
    StudyKind,
    StudyRoles,
)
from core.exceptions import ExperimentError, MissingDocumentError
from core.value_objects import DocumentId


def _as_list(value: Any) -> Any:
    if isinstance(value, str):
        return [value]
    return value


class RolesModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    target_work: list[str] = Field(default_factory=list)
    foreign_chapter: list[str] = Field(default_factory=list)
    rival_train: list[str] = Field(default_factory=list)
    self_train: list[str] = Field(default_factory=list)

    @field_validator("target_work", "foreign_chapter", "rival_train", "self_train", mode="before")
    @classmethod
    def _single_id(cls, value: Any) -> Any:
        return _as_list(value)


class ExperimentModel(BaseModel):
    name: str = Field(min_length=1)
    kind: StudyKind
    n_values: list[int] | None = None
    feature_modes: list[str | int] | None = None
    classifiers: list[ClassifierKind] | None = Field(default=None, alias="classifier")
    roles: RolesModel = Field(default_factory=RolesModel)
    word_frequencies: FrequencyPolicy = FrequencyPolicy.AUTO
    exclude_disputed_from_training: bool = False
    same_author_source: SameAuthorSource = SameAuthorSource.BOTH

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    @field_validator("classifiers", mode="before")
    @classmethod
    def _single_classifier(cls, value: Any) -> Any:
        return _as_list(value)


class ExperimentFileModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    experiments: list[ExperimentModel] = Field(min_length=1)


def _to_spec(
    model: ExperimentModel,
    default_n_values: Sequence[int],
    default_feature_modes: Sequence[FeatureMode],
    default_classifiers: Sequence[ClassifierKind],
) -> ExperimentSpec:
    modes = (
        tuple(FeatureMode.parse(str(mode)) for mode in model.feature_modes)
        if model.feature_modes is not None
        else tuple(default_feature_modes)
    )
    is_ngram = model.kind in (StudyKind.NGRAM_INTRA, StudyKind.NGRAM_SUBSTITUTION)
    return ExperimentSpec(
        name=model.name,
        kind=model.kind,
        n_values=tuple(model.n_values if model.n_values is not None else default_n_values)
        if is_ngram
        else (),
        feature_modes=() if is_ngram else modes,
        classifiers=()
        if is_ngram
        else tuple(model.classifiers if model.classifiers is not None else default_classifiers),
        roles=StudyRoles(
            target_work=tuple(DocumentId(i) for i in model.roles.target_work),
            foreign_chapter=tuple(DocumentId(i) for i in model.roles.foreign_chapter),
            rival_train=tuple(DocumentId(i) for i in model.roles.rival_train),
            self_train=tuple(DocumentId(i) for i in model.roles.self_train),
        ),
        word_frequencies=model.word_frequencies,
        exclude_disputed_from_training=model.exclude_disputed_from_training,
        same_author_source=model.same_author_source,
    )


def load_experiment_specs(
    path: Path,
    *,
    default_n_values: Sequence[int] = (2, 3, 4),
    default_feature_modes: Sequence[FeatureMode] = (
        FeatureMode(),
        FeatureMode(50),
        FeatureMode(75),
        FeatureMode(100),
    ),
    default_classifiers: Sequence[ClassifierKind] = (ClassifierKind.NBC, ClassifierKind.SVM),
) -> list[ExperimentSpec]:
    """Parse and validate an experiment spec file.

    Raises:
        MissingDocumentError: File missing.
        ExperimentError: Malformed JSON, schema violation or invalid spec.
    """
    try:
        payload = json.loads(path.read_text(encoding="utf-8-sig"))
    except FileNotFoundError:
        raise MissingDocumentError(f"Experiment spec not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ExperimentError(f"{path}: not valid JSON ({exc})") from None
    if isinstance(payload, dict) and "experiments" not in payload:
        payload = {"experiments": [payload]}
    try:
        parsed = ExperimentFileModel.model_validate(payload)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ()))
        raise ExperimentError(f"{path}: {where}: {first.get('msg', 'invalid value')}") from None
    specs = [
        _to_spec(model, default_n_values, default_feature_modes, default_classifiers)
        for model in parsed.experiments
    ]
    names = [spec.name for spec in specs]
    if len(set(names)) != len(names):
        raise ExperimentError(f"{path}: experiment names must be unique")
    return specs
