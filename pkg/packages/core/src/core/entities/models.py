"""Trained model entities: scaler, multinomial NBC, linear SVM.

★ Parameters only. Fitting and prediction live in adapters.numerics.
★ Immutable after training: safe to share across threads for prediction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from core.entities.features import FeatureSpace
from core.exceptions import ClassifierError, FeatureError


@dataclass(frozen=True, slots=True)
class MinMaxScaler:
    """Per-feature minima and maxima learned from training vectors."""

    space: FeatureSpace
    minima: tuple[float, ...]
    maxima: tuple[float, ...]

    def __post_init__(self) -> None:
        if not (len(self.minima) == len(self.maxima) == len(self.space)):
            raise FeatureError("Scaler bounds do not match the feature space")
        for feature, low, high in zip(self.space.features, self.minima, self.maxima, strict=True):
            if low > high:
                raise FeatureError(f"Scaler minimum exceeds maximum for {feature!r}")


@dataclass(frozen=True, slots=True)
class NBCModel:
    """Multinomial Naive Bayes parameters in the log domain."""

    space: FeatureSpace
    classes: tuple[str, ...]
    log_priors: tuple[float, ...]
    log_likelihoods: tuple[tuple[float, ...], ...]  # [class][feature]
    alpha: float

    def __post_init__(self) -> None:
        if self.alpha <= 0:
            raise ClassifierError(f"Smoothing alpha must be > 0, got {self.alpha}")
        if len(self.log_priors) != len(self.classes) or len(self.log_likelihoods) != len(
            self.classes
        ):
            raise ClassifierError("NBC parameters do not match the class list")
        if any(len(row) != len(self.space) for row in self.log_likelihoods):
            raise ClassifierError("NBC likelihood rows do not match the feature space")


@dataclass(frozen=True, slots=True)
class SVMModel:
    """Linear soft-margin SVM with a Platt sigmoid on its decision value."""

    space: FeatureSpace
    weights: tuple[float, ...]
    bias: float
    c: float
    platt_a: float
    platt_b: float
    dual_coefficients: tuple[float, ...]  # one per training point, in [0, C]
    iterations: int = 0

    def __post_init__(self) -> None:
        if self.c <= 0:
            raise ClassifierError(f"C must be > 0, got {self.c}")
        if len(self.weights) != len(self.space):
            raise ClassifierError("SVM weights do not match the feature space")
        if not all(math.isfinite(w) for w in self.weights) or not math.isfinite(self.bias):
            raise ClassifierError("SVM parameters must be finite")
