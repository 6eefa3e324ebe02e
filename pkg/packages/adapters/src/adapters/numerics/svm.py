"""Linear soft-margin SVM solved in the dual with SMO, plus Platt calibration.

Dual: min ½ αᵀQα − Σα  s.t.  Σ yᵢαᵢ = 0,  0 ≤ αᵢ ≤ C,  Q = (yyᵀ) ∘ XXᵀ.

★ Working pair = maximal violating pair (first index wins ties): no random
  selection, no shrinking, identical input → identical model.
★ Stops when m(α) − M(α) ≤ tol; the bias is then chosen inside [M, m], so
  every training point satisfies its KKT condition within tol.
★ Weights are rebuilt from the duals: w = Σ αᵢ yᵢ xᵢ.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from adapters.numerics.arrays import FloatArray, as_array, as_matrix
from adapters.numerics.platt import platt_fit, sigmoid_probability
from core.entities.features import FeatureVector
from core.entities.models import SVMModel
from core.exceptions import ClassifierError, ConvergenceError, SingleClassError, SpaceMismatchError

logger = logging.getLogger("adapters.numerics.svm")

DEFAULT_C = 1.0
DEFAULT_TOL = 1e-3
DEFAULT_MAX_ITER = 100_000
_TAU = 1e-12  # curvature floor for duplicate points


def _labels_array(labels: Sequence[int]) -> FloatArray:
    y = np.asarray(labels, dtype=np.float64)
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise ClassifierError("SVM labels must be +1 or -1")
    if not (np.any(y > 0) and np.any(y < 0)):
        raise SingleClassError("SVM training needs both +1 and -1 examples")
    return y


def _violating_pair(
    alpha: FloatArray,
    y: FloatArray,
    v: FloatArray,
    c: float,
) -> tuple[int, int, float, float]:
    """Return (i, j, m, M): i maximizes v over I_up, j minimizes v over I_low."""
    up = ((y > 0) & (alpha < c)) | ((y < 0) & (alpha > 0))
    low = ((y < 0) & (alpha < c)) | ((y > 0) & (alpha > 0))
    v_up = np.where(up, v, -np.inf)
    v_low = np.where(low, v, np.inf)
    i = int(np.argmax(v_up))
    j = int(np.argmin(v_low))
    return i, j, float(v_up[i]), float(v_low[j])


def _bias(alpha: FloatArray, v: FloatArray, c: float, m_up: float, m_low: float) -> float:
    free = (alpha > 0) & (alpha < c)
    if np.any(free):
        return float(np.mean(v[free]))
    finite = [value for value in (m_up, m_low) if math.isfinite(value)]
    return math.fsum(finite) / len(finite) if finite else 0.0


def _margins(weights: FloatArray, bias: float, matrix: FloatArray, y: FloatArray) -> FloatArray:
    return y * (np.sum(matrix * weights, axis=1) + bias)


def _max_kkt_violation(alpha: FloatArray, margins: FloatArray, c: float) -> float:
    at_zero = alpha <= 0.0
    at_c = alpha >= c
    free = ~(at_zero | at_c)
    violation = np.zeros_like(margins)
    violation[at_zero] = np.maximum(0.0, 1.0 - margins[at_zero])
    violation[at_c] = np.maximum(0.0, margins[at_c] - 1.0)
    violation[free] = np.abs(margins[free] - 1.0)
    return float(np.max(violation)) if violation.size else 0.0


def kkt_violation(
    model: SVMModel,
    vectors: Sequence[FeatureVector],
    labels: Sequence[int],
) -> float:
    """Largest KKT residual of the training points under ``model``."""
    space, matrix = as_matrix(vectors)
    if space is not model.space and space != model.space:
        raise SpaceMismatchError("Vectors are not in the model's feature space")
    y = np.asarray(labels, dtype=np.float64)
    alpha = np.asarray(model.dual_coefficients, dtype=np.float64)
    weights = np.asarray(model.weights, dtype=np.float64)
    return _max_kkt_violation(alpha, _margins(weights, model.bias, matrix, y), model.c)


def svm_train(
    vectors: Sequence[FeatureVector],
    labels: Sequence[int],
    c: float = DEFAULT_C,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SVMModel:
    """Train on pre-scaled vectors with ±1 labels, then Platt-calibrate.

    Raises:
        ClassifierError: Bad labels, C or tol.
        SingleClassError: Only one class present.
        ConvergenceError: max_iter pair updates without meeting tol.
    """
    if c <= 0 or tol <= 0:
        raise ClassifierError(f"C and tol must be > 0, got C={c}, tol={tol}")
    if not vectors or len(vectors) != len(labels):
        raise ClassifierError(f"{len(vectors)} vectors for {len(labels)} labels")
    y = _labels_array(labels)
    space, matrix = as_matrix(vectors)
    gram = matrix @ matrix.T
    diagonal = np.diag(gram)

    n = len(y)
    alpha = np.zeros(n, dtype=np.float64)
    # v_k = −y_k ∇_k f(α); at α = 0 the gradient is −1 everywhere.
    v = y.copy()
    iterations = 0
    i, j, m_up, m_low = _violating_pair(alpha, y, v, c)
    while m_up - m_low > tol:
        if iterations >= max_iter:
            bias = _bias(alpha, v, c, m_up, m_low)
            # v = y − w·x, so y·(w·x + b) = 1 − y·v + y·b.
            violation = _max_kkt_violation(alpha, 1.0 - y * v + y * bias, c)
            raise ConvergenceError("SMO", iterations, max(violation, m_up - m_low))
        iterations += 1

        curvature = max(diagonal[i] + diagonal[j] - 2.0 * gram[i, j], _TAU)
        step = (m_up - m_low) / curvature
        bound_i = c - alpha[i] if y[i] > 0 else alpha[i]
        bound_j = alpha[j] if y[j] > 0 else c - alpha[j]
        step = min(step, bound_i, bound_j)

        alpha[i] += y[i] * step
        alpha[j] -= y[j] * step
        # Snap clipped coordinates exactly onto the box.
        if step == bound_i:
            alpha[i] = c if y[i] > 0 else 0.0
        if step == bound_j:
            alpha[j] = 0.0 if y[j] > 0 else c
        v -= step * (gram[:, i] - gram[:, j])
        i, j, m_up, m_low = _violating_pair(alpha, y, v, c)

    bias = _bias(alpha, v, c, m_up, m_low)
    weights = np.sum((alpha * y)[:, np.newaxis] * matrix, axis=0)
    decisions = np.sum(matrix * weights, axis=1) + bias
    calibration = platt_fit(decisions.tolist(), [int(label) for label in y])

    margins = y * decisions
    if np.any(margins < 1.0 - tol):
        logger.info(
            "SVM training data not separated with margin at C=%s (%d of %d points inside)",
            c,
            int(np.sum(margins < 1.0 - tol)),
            n,
        )
    logger.debug("SMO converged: %d pair updates, gap %.3e", iterations, m_up - m_low)
    return SVMModel(
        space=space,
        weights=tuple(float(w) for w in weights),
        bias=bias,
        c=c,
        platt_a=calibration.a,
        platt_b=calibration.b,
        dual_coefficients=tuple(float(a) for a in alpha),
        iterations=iterations,
    )


def svm_decision(model: SVMModel, vector: FeatureVector) -> float:
    """Signed distance proxy w·x + b."""
    if vector.space is not model.space and vector.space != model.space:
        raise SpaceMismatchError("Vector is not in the model's feature space")
    return float(np.sum(np.asarray(model.weights) * as_array(vector))) + model.bias


def svm_predict_proba(model: SVMModel, vector: FeatureVector) -> float:
    """Calibrated probability of the +1 class."""
    return sigmoid_probability(svm_decision(model, vector), model.platt_a, model.platt_b)


def svm_predict(model: SVMModel, vector: FeatureVector) -> int:
    """+1 when the calibrated probability is at least 0.5, else −1."""
    return 1 if svm_predict_proba(model, vector) >= 0.5 else -1
