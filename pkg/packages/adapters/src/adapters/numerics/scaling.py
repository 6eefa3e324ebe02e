"""Min-max feature scaling fit on training vectors only.

★ (x − min) / (max − min); constant features map to 0.
★ No clipping: unseen values may fall outside [0, 1].
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from adapters.numerics.arrays import as_array, as_matrix, to_vector
from core.entities.features import FeatureVector
from core.entities.models import MinMaxScaler
from core.exceptions import FeatureError, SpaceMismatchError


def scaler_fit(train_vectors: Sequence[FeatureVector]) -> MinMaxScaler:
    """Learn per-feature minima and maxima."""
    if not train_vectors:
        raise FeatureError("Scaler needs at least one training vector")
    space, matrix = as_matrix(train_vectors)
    return MinMaxScaler(
        space=space,
        minima=tuple(float(v) for v in matrix.min(axis=0)),
        maxima=tuple(float(v) for v in matrix.max(axis=0)),
    )


def scaler_transform(scaler: MinMaxScaler, vector: FeatureVector) -> FeatureVector:
    """Map ``vector`` into the scaler's [0, 1] training range."""
    if vector.space is not scaler.space and vector.space != scaler.space:
        raise SpaceMismatchError("Vector is not in the scaler's feature space")
    low = np.asarray(scaler.minima, dtype=np.float64)
    span = np.asarray(scaler.maxima, dtype=np.float64) - low
    values = as_array(vector) - low
    degenerate = span == 0.0
    scaled = np.divide(values, span, out=np.zeros_like(values), where=~degenerate)
    return to_vector(scaler.space, scaled)
