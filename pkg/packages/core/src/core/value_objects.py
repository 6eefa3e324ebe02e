"""Value objects: domain primitives with type safety via NewType.

★ NewType enforces type safety at mypy level: can't pass an AuthorLabel
  where a DocumentId is expected.
"""

from __future__ import annotations

from typing import NewType

DocumentId = NewType("DocumentId", str)  # "cyro.1", "meta.3", ...
AuthorLabel = NewType("AuthorLabel", str)  # "Xenophon", "Aristotle", ...
WorkLabel = NewType("WorkLabel", str)  # "Cyropaedia", "Metaphysics", ...

# Frequencies are expressed per this many running words.
WORDS_PER_RATE = 10_000
