"""Run-scoped observability: run id, logging setup, recent-event buffer.

★ The run id lives in a ContextVar and is stamped on every log record; each
  CLI invocation sets a fresh one and resets it on exit.
★ ``record_event`` keeps the last events of the process in a bounded deque;
  the ``run`` summary header is counted from this run's events.
"""
from __future__ import annotations

import json
import logging
import sys
import uuid
from collections import deque
from contextvars import ContextVar, Token
from datetime import UTC, datetime
from threading import Lock
from typing import Any

_RUN_ID = ContextVar("stylo_run_id", default="")
_EVENTS_LOCK = Lock()
_EVENTS: deque[dict[str, Any]] = deque(maxlen=400)


def get_run_id() -> str:
    value = _RUN_ID.get().strip()
    return value or "unknown"


def ensure_run_id() -> str:
    value = _RUN_ID.get().strip()
    if value:
        return value
    value = uuid.uuid4().hex[:12]
    _RUN_ID.set(value)
    return value


def set_run_id(value: str) -> Token[str]:
    cleaned = value.strip() or uuid.uuid4().hex[:12]
    return _RUN_ID.set(cleaned)


def reset_run_id(token: Token[str]) -> None:
    _RUN_ID.reset(token)


def record_event(
    *,
    flow: str,
    level: str,
    message: str,
    metadata: dict[str, Any] | None = None,
) -> None:
    event = {
        "timestamp": datetime.now(UTC).isoformat(),
        "run_id": get_run_id(),
        "flow": flow,
        "level": level.lower(),
        "message": message,
        "metadata": metadata or {},
    }
    with _EVENTS_LOCK:
        _EVENTS.append(event)


def list_events(*, flow: str | None = None, limit: int = 100) -> list[dict[str, Any]]:
    """Newest first."""
    limited = max(1, min(limit, 400))
    with _EVENTS_LOCK:
        items = list(_EVENTS)
    if flow:
        flow_norm = flow.strip().lower()
        items = [item for item in items if str(item.get("flow", "")).lower() == flow_norm]
    return list(reversed(items))[:limited]


def clear_events() -> None:
    with _EVENTS_LOCK:
        _EVENTS.clear()


# ── Logging ───────────────────────────────────────────────────────────────────


class _RunIdFilter(logging.Filter):
    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = get_run_id()
        return True


class JsonLineFormatter(logging.Formatter):
    """One JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, UTC).isoformat(),
            "level": record.levelname.lower(),
            "logger": record.name,
            "run_id": getattr(record, "run_id", get_run_id()),
            "message": record.getMessage(),
        }
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, ensure_ascii=False)


def configure_logging(level: str = "INFO", *, json_lines: bool = False) -> None:
    """Route every logger to stderr; stdout stays free for reports."""
    handler = logging.StreamHandler(sys.stderr)
    handler.addFilter(_RunIdFilter())
    if json_lines:
        handler.setFormatter(JsonLineFormatter())
    else:
        handler.setFormatter(
            logging.Formatter("%(asctime)s %(levelname)s [%(run_id)s] %(name)s: %(message)s")
        )
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level.upper())
