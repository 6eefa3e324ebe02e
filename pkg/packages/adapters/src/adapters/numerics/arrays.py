"""Conversions between core FeatureVectors and numpy arrays."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from core.entities.features import FeatureSpace, FeatureVector, ensure_same_space

FloatArray = npt.NDArray[np.float64]


def as_array(vector: FeatureVector) -> FloatArray:
    return np.asarray(vector.values, dtype=np.float64)


def as_matrix(vectors: Sequence[FeatureVector]) -> tuple[FeatureSpace, FloatArray]:
    """Stack vectors row-wise after checking they share one space."""
    space = ensure_same_space(*vectors)
    matrix = np.array([vector.values for vector in vectors], dtype=np.float64)
    return space, matrix.reshape(len(vectors), len(space))


def to_vector(space: FeatureSpace, values: FloatArray) -> FeatureVector:
    return FeatureVector(space=space, values=tuple(float(v) for v in values))
