"""Platt sigmoid calibration of SVM decision values.

P(y = +1 | d) = 1 / (1 + exp(A·d + B)), fitted by Newton's method with
backtracking on the cross-entropy against Platt's smoothed targets
t+ = (N+ + 1)/(N+ + 2), t− = 1/(N− + 2).

★ Fitted directly on training decisions, no internal cross-validation:
  training sets hold a handful of chapters.
★ Identical decisions carry no signal: A = 0 and P = (N+ + 1)/(N + 2).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from adapters.numerics.arrays import FloatArray
from core.exceptions import ClassifierError, SingleClassError

logger = logging.getLogger("adapters.numerics.platt")

MAX_ITERATIONS = 100
GRADIENT_TOLERANCE = 1e-8
_MIN_STEP = 1e-10
_HESSIAN_RIDGE = 1e-12


@dataclass(frozen=True, slots=True)
class PlattFit:
    a: float
    b: float
    iterations: int
    degenerate: bool = False


def sigmoid_probability(decision: float, a: float, b: float) -> float:
    """1 / (1 + exp(a·decision + b)) without overflow."""
    z = a * decision + b
    if z >= 0:
        e = math.exp(-z)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(z))


def _probabilities(decisions: FloatArray, a: float, b: float) -> FloatArray:
    z = decisions * a + b
    e = np.exp(-np.abs(z))
    return np.where(z >= 0, e / (1.0 + e), 1.0 / (1.0 + e))


def _objective(decisions: FloatArray, targets: FloatArray, a: float, b: float) -> float:
    z = decisions * a + b
    # −[t log p + (1 − t) log(1 − p)] with p = 1/(1 + e^z), written stably.
    linear = np.where(z >= 0, targets * z, (targets - 1.0) * z)
    return float(np.sum(linear + np.log1p(np.exp(-np.abs(z)))))


def platt_fit(decisions: Sequence[float], labels: Sequence[int]) -> PlattFit:
    """Fit sigmoid parameters (A, B) to decisions and ±1 labels.

    Raises:
        ClassifierError: Length mismatch or labels other than ±1.
        SingleClassError: Only one class present.
    """
    d = np.asarray(decisions, dtype=np.float64)
    y = np.asarray(labels)
    if d.shape != y.shape or d.ndim != 1:
        raise ClassifierError(f"{d.size} decisions for {y.size} labels")
    if not np.all(np.isin(y, (-1, 1))):
        raise ClassifierError("Platt labels must be +1 or -1")
    n_pos = int(np.sum(y > 0))
    n_neg = int(np.sum(y < 0))
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError("Platt scaling needs at least one example per class")

    targets = np.where(y > 0, (n_pos + 1.0) / (n_pos + 2.0), 1.0 / (n_neg + 2.0))
    a = 0.0
    b = math.log((n_neg + 1.0) / (n_pos + 1.0))

    if float(np.ptp(d)) <= 1e-9 * max(1.0, float(np.max(np.abs(d)))):
        logger.warning(
            "Degenerate Platt fit: all %d decisions equal %.6g; using smoothed class rate",
            d.size,
            float(d[0]),
        )
        return PlattFit(a=0.0, b=b, iterations=0, degenerate=True)

    fval = _objective(d, targets, a, b)
    iteration = 0
    for iteration in range(1, MAX_ITERATIONS + 1):
        p = _probabilities(d, a, b)
        weights = p * (1.0 - p)
        h11 = _HESSIAN_RIDGE + float(np.sum(d * d * weights))
        h22 = _HESSIAN_RIDGE + float(np.sum(weights))
        h21 = float(np.sum(d * weights))
        residual = targets - p
        g1 = float(np.sum(d * residual))
        g2 = float(np.sum(residual))
        if math.hypot(g1, g2) <= GRADIENT_TOLERANCE:
            break

        det = h11 * h22 - h21 * h21
        step_a = -(h22 * g1 - h21 * g2) / det
        step_b = -(-h21 * g1 + h11 * g2) / det
        descent = g1 * step_a + g2 * step_b

        step = 1.0
        while step >= _MIN_STEP:
            new_a = a + step * step_a
            new_b = b + step * step_b
            new_f = _objective(d, targets, new_a, new_b)
            if new_f < fval + 1e-4 * step * descent:
                a, b, fval = new_a, new_b, new_f
                break
            step /= 2.0
        else:
            # Objective is flat to rounding: gradient is as small as it gets.
            logger.debug("Platt line search stalled at |g|=%.3e", math.hypot(g1, g2))
            break
    else:
        logger.warning("Platt fit reached %d iterations without converging", MAX_ITERATIONS)

    return PlattFit(a=a, b=b, iterations=iteration)
