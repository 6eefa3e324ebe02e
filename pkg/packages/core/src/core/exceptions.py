"""Domain errors: one hierarchy so the CLI can map failures to exit codes.

★ Every message names the offending entry (document id, path, line, feature).
★ ConvergenceError is the only numerical failure; everything else is input.
"""

from __future__ import annotations


class StylometryError(Exception):
    """Base class for every error raised by the toolkit."""


# ── Corpus ───────────────────────────────────────────────────


class CorpusError(StylometryError):
    """Corpus could not be loaded or violates an invariant."""


class ManifestError(CorpusError):
    """Manifest file is malformed."""


class MissingDocumentError(CorpusError):
    """A referenced text or table file does not exist or cannot be decoded."""


class DuplicateDocumentError(CorpusError):
    """Two documents share one id."""


class EmptyDocumentError(CorpusError):
    """A document is empty after normalization."""


# ── Features ─────────────────────────────────────────────────


class FeatureError(StylometryError):
    """Feature extraction or alignment failed."""


class EmptyTableError(FeatureError):
    """No frequencies are definable for an empty table."""


class SpaceMismatchError(FeatureError):
    """Two vectors (or a vector and a model) live in different feature spaces."""


class VocabularyTooSmallError(FeatureError):
    """Requested more top-N features than the combined vocabulary holds."""


class FrequencyTableError(FeatureError):
    """A word-frequency file line is malformed."""

    def __init__(self, path: str, line_no: int, reason: str) -> None:
        self.path = path
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {reason}")


# ── Metrics / classifiers ───────────────────────────────────


class MetricError(StylometryError):
    """Distance is undefined for the given vectors."""


class ZeroNormError(MetricError):
    """Cosine distance of a zero vector."""


class ClassifierError(StylometryError):
    """Training or prediction input is invalid."""


class SingleClassError(ClassifierError):
    """Training data holds fewer than two classes."""


class NegativeFeatureError(ClassifierError):
    """Multinomial model received a negative feature value."""


class ConvergenceError(StylometryError):
    """Iterative solver stopped at its iteration cap without meeting tolerance."""

    def __init__(self, solver: str, iterations: int, max_violation: float) -> None:
        self.solver = solver
        self.iterations = iterations
        self.max_violation = max_violation
        super().__init__(
            f"{solver} did not converge after {iterations} iterations "
            f"(max KKT violation {max_violation:.3e})"
        )


# ── Experiments ──────────────────────────────────────────────


class ExperimentError(StylometryError):
    """Experiment spec cannot be executed against the corpus."""
