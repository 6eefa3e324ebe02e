"""Cosine distance and chapter distance matrices.

★ distance = 1 − u·v / (‖u‖‖v‖), computed with numpy's pairwise summation
  (np.sum, not BLAS dot) so large sparse N-gram spaces stay accurate and the
  result does not depend on thread count.
★ Pair (i, j) is always evaluated as cosine(vectors[i], vectors[j]) with i < j,
  then mirrored: the matrix is exactly symmetric.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from adapters.numerics.arrays import FloatArray, as_array
from core.entities.distance import DistanceMatrix
from core.entities.features import FeatureVector, ensure_same_space
from core.exceptions import MetricError, ZeroNormError
from core.value_objects import DocumentId

logger = logging.getLogger("adapters.numerics.distance")


def _cosine(a: FloatArray, b: FloatArray) -> float:
    norm_a = math.sqrt(float(np.sum(a * a)))
    norm_b = math.sqrt(float(np.sum(b * b)))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ZeroNormError("Cosine distance is undefined for a zero vector")
    similarity = float(np.sum(a * b)) / (norm_a * norm_b)
    # Rounding can push identical vectors a hair below zero.
    return max(0.0, 1.0 - similarity)


def cosine_distance(u: FeatureVector, v: FeatureVector) -> float:
    """1 − cosine of the angle between ``u`` and ``v``.

    Raises:
        SpaceMismatchError: Vectors live in different spaces.
        ZeroNormError: Either vector is all zeros.
    """
    ensure_same_space(u, v)
    return _cosine(as_array(u), as_array(v))


def avg_distance_to_peers(index: int, vectors: Sequence[FeatureVector]) -> float:
    """Mean cosine distance from ``vectors[index]`` to every other vector."""
    if len(vectors) < 2:
        raise MetricError("Average peer distance needs at least 2 vectors")
    if not 0 <= index < len(vectors):
        raise MetricError(f"Index {index} out of range for {len(vectors)} vectors")
    distances = [cosine_distance(vectors[index], other) for j, other in enumerate(vectors) if j != index]
    return math.fsum(distances) / len(distances)


def distance_matrix(
    labels: Sequence[DocumentId],
    vectors: Sequence[FeatureVector],
) -> DistanceMatrix:
    """All pairwise cosine distances; zero diagonal, mirrored upper triangle."""
    if len(labels) != len(vectors):
        raise MetricError(f"{len(labels)} labels for {len(vectors)} vectors")
    ensure_same_space(*vectors)
    arrays = [as_array(vector) for vector in vectors]
    size = len(arrays)
    values = [[0.0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            distance = _cosine(arrays[i], arrays[j])
            values[i][j] = distance
            values[j][i] = distance
    logger.debug("Distance matrix: %d documents, %d features", size, len(vectors[0]))
    return DistanceMatrix(labels=tuple(labels), values=tuple(tuple(row) for row in values))
