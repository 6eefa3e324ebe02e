"""Structured step logging for study runs.

★ One JSON line per step: which study, which phase, what went in, what came
  out, how long it took, and the error if any.
★ ``study_step`` wraps a block and logs it on exit, failed or not.
"""

from __future__ import annotations

import json
import logging
import time
from collections.abc import Iterator
from contextlib import contextmanager
from datetime import UTC, datetime
from typing import Any

logger = logging.getLogger("experiments.pipeline")


def log_study_step(
    run_id: str,
    study: str,
    phase: str,
    input_summary: dict[str, Any],
    output_summary: dict[str, Any],
    duration_ms: float,
    error: str | None = None,
) -> None:
    """Structured log entry for every study step."""
    entry: dict[str, Any] = {
        "timestamp": datetime.now(UTC).isoformat(),
        "run_id": run_id,
        "study": study,
        "phase": phase,
        "duration_ms": round(duration_ms, 1),
        "input": input_summary,
        "output": output_summary,
    }
    if error:
        entry["error"] = error
        logger.error(json.dumps(entry, ensure_ascii=False))
    else:
        logger.info(json.dumps(entry, ensure_ascii=False))


@contextmanager
def study_step(
    run_id: str,
    study: str,
    phase: str,
    input_summary: dict[str, Any],
) -> Iterator[dict[str, Any]]:
    """Time a block; the yielded dict becomes the output summary."""
    output: dict[str, Any] = {}
    started = time.perf_counter()
    try:
        yield output
    except Exception as exc:
        log_study_step(
            run_id,
            study,
            phase,
            input_summary,
            output,
            (time.perf_counter() - started) * 1000,
            error=f"{type(exc).__name__}: {exc}",
        )
        raise
    log_study_step(run_id, study, phase, input_summary, output, (time.perf_counter() - started) * 1000)
