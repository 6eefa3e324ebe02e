"""JSON store for trained classifiers.

The feature space is referenced by content hash, not embedded: loading a
model against a different space fails loudly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ValidationError

from core.entities.features import FeatureSpace
from core.entities.models import NBCModel, SVMModel
from core.exceptions import ClassifierError, SpaceMismatchError


class SpaceRef(BaseModel):
    sha256: str
    size: int


class NBCPayload(BaseModel):
    kind: Literal["nbc"] = "nbc"
    space: SpaceRef
    classes: list[str]
    alpha: float
    log_priors: list[float]
    log_likelihoods: list[list[float]]


class SVMPayload(BaseModel):
    kind: Literal["svm"] = "svm"
    space: SpaceRef
    c: float
    weights: list[float]
    bias: float
    platt_a: float
    platt_b: float
    dual_coefficients: list[float]
    iterations: int


def _space_ref(space: FeatureSpace) -> SpaceRef:
    return SpaceRef(sha256=space.content_hash(), size=len(space))


def dump_model(model: NBCModel | SVMModel) -> str:
    """Serialize to deterministic JSON text."""
    payload: NBCPayload | SVMPayload
    if isinstance(model, NBCModel):
        payload = NBCPayload(
            space=_space_ref(model.space),
            classes=list(model.classes),
            alpha=model.alpha,
            log_priors=list(model.log_priors),
            log_likelihoods=[list(row) for row in model.log_likelihoods],
        )
    else:
        payload = SVMPayload(
            space=_space_ref(model.space),
            c=model.c,
            weights=list(model.weights),
            bias=model.bias,
            platt_a=model.platt_a,
            platt_b=model.platt_b,
            dual_coefficients=list(model.dual_coefficients),
            iterations=model.iterations,
        )
    return json.dumps(payload.model_dump(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_model(path: Path, model: NBCModel | SVMModel) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_model(model), encoding="utf-8")
    return path


def load_model(path: Path, space: FeatureSpace) -> NBCModel | SVMModel:
    """Rebuild a model, checking it was trained on ``space``.

    Raises:
        ClassifierError: File is not a model payload.
        SpaceMismatchError: ``space`` hash differs from the stored one.
    """
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        kind = raw.get("kind")
        payload: NBCPayload | SVMPayload = (
            NBCPayload.model_validate(raw) if kind == "nbc" else SVMPayload.model_validate(raw)
        )
    except (json.JSONDecodeError, ValidationError, AttributeError) as exc:
        raise ClassifierError(f"{path}: not a model file ({exc})") from None
    if payload.space.sha256 != space.content_hash() or payload.space.size != len(space):
        raise SpaceMismatchError(f"{path}: model was trained on a different feature space")
    if isinstance(payload, NBCPayload):
        return NBCModel(
            space=space,
            classes=tuple(payload.classes),
            log_priors=tuple(payload.log_priors),
            log_likelihoods=tuple(tuple(row) for row in payload.log_likelihoods),
            alpha=payload.alpha,
        )
    return SVMModel(
        space=space,
        weights=tuple(payload.weights),
        bias=payload.bias,
        c=payload.c,
        platt_a=payload.platt_a,
        platt_b=payload.platt_b,
        dual_coefficients=tuple(payload.dual_coefficients),
        iterations=payload.iterations,
    )
