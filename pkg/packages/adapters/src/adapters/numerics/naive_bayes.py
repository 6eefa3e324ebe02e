"""Multinomial Naive Bayes over (fractional) word-frequency vectors.

★ Per-10k frequencies are accepted as pseudo-counts: the smoothed estimate
  (Σ x + α) / (Σ Σ x + α·|F|) is well defined for reals.
★ Posteriors are normalized in the log domain (log-sum-exp): no underflow on
  long chapters.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from adapters.numerics.arrays import as_array, as_matrix
from core.entities.features import FeatureVector
from core.entities.models import NBCModel
from core.exceptions import (
    ClassifierError,
    NegativeFeatureError,
    SingleClassError,
    SpaceMismatchError,
)

logger = logging.getLogger("adapters.numerics.naive_bayes")

DEFAULT_ALPHA = 1.0


def nbc_train(
    vectors: Sequence[FeatureVector],
    labels: Sequence[str],
    alpha: float = DEFAULT_ALPHA,
) -> NBCModel:
    """Fit class priors and smoothed per-class feature distributions.

    Raises:
        ClassifierError: Mismatched inputs or alpha <= 0.
        SingleClassError: Fewer than two classes.
        NegativeFeatureError: Any feature value < 0.
    """
    if alpha <= 0:
        raise ClassifierError(f"Smoothing alpha must be > 0, got {alpha}")
    if not vectors or len(vectors) != len(labels):
        raise ClassifierError(f"{len(vectors)} vectors for {len(labels)} labels")
    space, matrix = as_matrix(vectors)
    if np.any(matrix < 0):
        row, col = (int(i) for i in np.argwhere(matrix < 0)[0])
        raise NegativeFeatureError(
            f"Negative value {matrix[row, col]} for feature {space.features[col]!r} "
            f"in training vector {row}"
        )
    classes = tuple(sorted(set(labels)))
    if len(classes) < 2:
        raise SingleClassError(f"Naive Bayes needs two classes, got {list(classes)}")

    label_array = np.asarray(labels, dtype=object)
    log_priors: list[float] = []
    log_likelihoods: list[tuple[float, ...]] = []
    for label in classes:
        members = matrix[label_array == label]
        smoothed = np.sum(members, axis=0) + alpha
        log_likelihoods.append(tuple(float(v) for v in np.log(smoothed) - math.log(float(np.sum(smoothed)))))
        log_priors.append(math.log(len(members) / len(labels)))

    logger.debug("NBC trained: classes=%s, features=%d, alpha=%s", classes, len(space), alpha)
    return NBCModel(
        space=space,
        classes=classes,
        log_priors=tuple(log_priors),
        log_likelihoods=tuple(log_likelihoods),
        alpha=alpha,
    )


def nbc_predict_log_proba(model: NBCModel, vector: FeatureVector) -> dict[str, float]:
    """Log posterior of every class; exp of the values sums to 1."""
    if vector.space is not model.space and vector.space != model.space:
        raise SpaceMismatchError("Vector is not in the model's feature space")
    x = as_array(vector)
    if np.any(x < 0):
        raise NegativeFeatureError("Naive Bayes cannot score negative feature values")
    likelihoods = np.asarray(model.log_likelihoods, dtype=np.float64)
    joint = np.asarray(model.log_priors, dtype=np.float64) + np.sum(likelihoods * x, axis=1)
    log_evidence = float(np.logaddexp.reduce(joint))
    return {label: float(score - log_evidence) for label, score in zip(model.classes, joint, strict=True)}


def nbc_predict(model: NBCModel, vector: FeatureVector) -> str:
    """Most probable class; ties go to the first class in model order."""
    posterior = nbc_predict_log_proba(model, vector)
    return max(model.classes, key=lambda label: posterior[label])
