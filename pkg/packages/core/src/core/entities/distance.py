"""Distance matrix entity: pairwise cosine distances between chapters."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from core.exceptions import MetricError
from core.value_objects import DocumentId


@dataclass(frozen=True, slots=True)
class DistanceMatrix:
    """Square symmetric matrix with a zero diagonal, indexed like ``labels``."""

    labels: tuple[DocumentId, ...]
    values: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        size = len(self.labels)
        if len(self.values) != size or any(len(row) != size for row in self.values):
            raise MetricError(f"Distance matrix must be {size}x{size}")
        for i in range(size):
            if self.values[i][i] != 0.0:
                raise MetricError(f"Non-zero diagonal at {self.labels[i]!r}")
            for j in range(i + 1, size):
                if self.values[i][j] != self.values[j][i]:
                    raise MetricError(
                        f"Asymmetric entry between {self.labels[i]!r} and {self.labels[j]!r}"
                    )

    def __len__(self) -> int:
        return len(self.labels)

    def distance(self, i: int, j: int) -> float:
        return self.values[i][j]

    def peer_average(self, index: int, peers: Sequence[int]) -> float:
        """Mean distance from ``index`` to every peer other than itself."""
        others = [j for j in peers if j != index]
        if not others:
            raise MetricError(f"Chapter {self.labels[index]!r} has no peers")
        return math.fsum(self.values[index][j] for j in others) / len(others)
