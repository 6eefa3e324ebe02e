"""Report port: persist result tables and model dumps."""

from __future__ import annotations

from enum import StrEnum
from pathlib import Path
from typing import Protocol

from core.entities.experiment import ResultTable


class ReportFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


class ReportWriter(Protocol):
    """Outbound port: write one run's files."""

    def write(self, table: ResultTable, report_format: ReportFormat, path: Path) -> Path:
        """Write ``table`` and return the final path."""
        ...

    def write_text(self, content: str, path: Path) -> Path:
        """Write prerendered text (a model dump) and return the final path."""
        ...
