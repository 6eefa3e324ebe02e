"""Core domain layer: documents, feature tables, models, ports, use cases.

★ ZERO external dependencies. Pure Python + typing only.
★ This package defines WHAT is measured, not HOW it is computed numerically.
"""

__version__ = "0.1.0"
