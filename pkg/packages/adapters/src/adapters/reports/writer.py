"""Result table writers.

★ CSV: header ``chapter,series,value``; values at full double precision (repr).
★ JSON: ``{"metadata": {...}, "rows": [...]}`` with sorted keys; rows keep
  table order and carry the hard label when one exists.
★ Byte-deterministic: no timestamps, fixed line endings.
★ Files are staged under a temp name and renamed into place; a ReportBatch
  renames nothing unless every staged table was written.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import tempfile
from pathlib import Path
from types import TracebackType
from typing import Any, Self

from core.entities.experiment import ResultRow, ResultTable
from core.exceptions import ExperimentError
from core.ports.report_writer import ReportFormat
from core.value_objects import DocumentId

logger = logging.getLogger("adapters.reports.writer")


def render_csv(table: ResultTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["chapter", "series", "value"])
    for row in table.rows:
        writer.writerow([row.chapter, row.series, repr(row.value)])
    return buffer.getvalue()


def _row_payload(row: ResultRow) -> dict[str, Any]:
    payload: dict[str, Any] = {"chapter": row.chapter, "series": row.series, "value": row.value}
    if row.label is not None:
        payload["label"] = row.label
    return payload


def render_json(table: ResultTable) -> str:
    payload = {
        "metadata": dict(table.metadata),
        "rows": [_row_payload(row) for row in table.rows],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True, allow_nan=False) + "\n"


def render(table: ResultTable, report_format: ReportFormat) -> str:
    if report_format == ReportFormat.CSV:
        return render_csv(table)
    return render_json(table)


def _stage(content: str, path: Path) -> Path:
    """Write ``content`` to a temp file next to ``path``; return the temp path."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, temp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(content)
    except BaseException:
        Path(temp_name).unlink(missing_ok=True)
        raise
    return Path(temp_name)


def emit_report(table: ResultTable, report_format: ReportFormat, path: Path) -> Path:
    """Write one table atomically.

    Raises:
        OSError: Path not writable.
    """
    temp = _stage(render(table, report_format), path)
    os.replace(temp, path)
    logger.info("Wrote %s (%d rows)", path, len(table))
    return path


def read_report_json(path: Path) -> ResultTable:
    """Inverse of the JSON writer."""
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        rows = tuple(
            ResultRow(
                chapter=DocumentId(item["chapter"]),
                series=item["series"],
                value=float(item["value"]),
                label=item.get("label"),
            )
            for item in payload["rows"]
        )
        return ResultTable(rows=rows, metadata=payload.get("metadata", {}))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ExperimentError(f"{path}: not a result table ({exc})") from None


class ReportBatch:
    """All-or-nothing ReportWriter for the result files of one run.

    Usage::

        with ReportBatch() as batch:
            batch.write(table, ReportFormat.CSV, out / "a.csv")
            ...
        # renamed into place only if the block exits cleanly
    """

    def __init__(self) -> None:
        self._staged: list[tuple[Path, Path]] = []
        self._committed: list[Path] = []

    def write(self, table: ResultTable, report_format: ReportFormat, path: Path) -> Path:
        self._staged.append((_stage(render(table, report_format), path), path))
        return path

    def write_text(self, content: str, path: Path) -> Path:
        self._staged.append((_stage(content, path), path))
        return path

    @property
    def committed(self) -> tuple[Path, ...]:
        return tuple(self._committed)

    def commit(self) -> tuple[Path, ...]:
        for temp, final in self._staged:
            os.replace(temp, final)
            self._committed.append(final)
        self._staged.clear()
        logger.info("Committed %d result files", len(self._committed))
        return self.committed

    def discard(self) -> None:
        for temp, _ in self._staged:
            temp.unlink(missing_ok=True)
        if self._staged:
            logger.warning("Discarded %d staged result files", len(self._staged))
        self._staged.clear()

    def __enter__(self) -> Self:
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        if exc_type is None:
            self.commit()
        else:
            self.discard()
