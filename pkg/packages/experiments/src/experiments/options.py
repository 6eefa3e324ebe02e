"""Numeric and execution options shared by every study of a run."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from adapters.numerics.naive_bayes import DEFAULT_ALPHA
from adapters.numerics.svm import DEFAULT_C, DEFAULT_MAX_ITER, DEFAULT_TOL
from core.exceptions import ExperimentError


@dataclass(frozen=True, slots=True)
class StudyOptions:
    alpha: float = DEFAULT_ALPHA
    c: float = DEFAULT_C
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    strip_punctuation: bool = False
    max_workers: int = 1
    keep_models: bool = False  # hand trained models back with the results
    run_id: str = "-"

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.c <= 0 or self.tol <= 0:
            raise ExperimentError("alpha, C and tol must all be > 0")
        if self.max_iter < 1:
            raise ExperimentError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.max_workers < 1:
            raise ExperimentError(f"max_workers must be >= 1, got {self.max_workers}")

    def numeric_config(self) -> dict[str, Any]:
        """Settings that change results (hashed into report metadata)."""
        return {
            "alpha": self.alpha,
            "c": self.c,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "strip_punctuation": self.strip_punctuation,
        }
