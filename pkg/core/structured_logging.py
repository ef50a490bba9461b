"""Structured logging with run and phase correlation.

Every record carries ``run_id`` and ``phase``. Phases nest: a stage run
inside the ``pipeline`` command logs as ``phase=pipeline/peel``.
"""

from __future__ import annotations

import contextvars
import hashlib
import json
import logging
import sys
from contextlib import contextmanager
from typing import Any, Iterator, Union

LOG_FORMAT = "%(asctime)s | %(levelname)s | run_id=%(run_id)s | phase=%(phase)s | %(name)s | %(message)s"

_RUN_ID: contextvars.ContextVar[str] = contextvars.ContextVar("run_id", default="-")
_PHASE: contextvars.ContextVar[tuple[str, ...]] = contextvars.ContextVar("phase", default=())


class _RunContextFilter(logging.Filter):
    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = _RUN_ID.get()
        record.phase = "/".join(_PHASE.get()) or "-"
        return True


def _stderr_handler() -> logging.Handler:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.addFilter(_RunContextFilter())
    handler.set_name("veer-stderr")
    return handler


def configure_structured_logging(level: Union[int, str] = logging.INFO) -> None:
    """Route root logging to standard error with run/phase fields.

    Safe to call repeatedly: the stderr handler is installed once, and
    handlers added by others (pytest's capture, for one) get the filter too.
    Standard output stays reserved for data.
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    root = logging.getLogger()
    root.setLevel(level)
    if not any(h.get_name() == "veer-stderr" for h in root.handlers):
        root.addHandler(_stderr_handler())
    for handler in root.handlers:
        if not any(isinstance(f, _RunContextFilter) for f in handler.filters):
            handler.addFilter(_RunContextFilter())


def derive_run_id(command: str, payload: dict[str, Any]) -> str:
    """Stable run id from a command name and its resolved config."""
    canonical = json.dumps(payload, sort_keys=True, default=str)
    digest = hashlib.sha256(f"{command}\n{canonical}".encode("utf-8")).hexdigest()
    return f"{command}-{digest[:16]}"


def set_run_id(run_id: str | None = None) -> str:
    """Set the run correlation id (``"adhoc"`` when none is supplied)."""
    value = run_id or "adhoc"
    _RUN_ID.set(value)
    return value


def get_run_id() -> str:
    return _RUN_ID.get()


def get_phase() -> str:
    return "/".join(_PHASE.get()) or "-"


@contextmanager
def phase_scope(phase: str) -> Iterator[None]:
    """Push ``phase`` onto the phase path for the duration of the block."""
    token = _PHASE.set(_PHASE.get() + (phase,))
    try:
        yield
    finally:
        _PHASE.reset(token)
