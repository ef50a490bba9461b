"""Run configuration loading and validation.

A run config file is YAML (or JSON, which YAML parses) holding defaults for
one CLI invocation. Flags given on the command line override file values.
In non-strict mode read or parse problems are logged and the built-in
defaults are used; in strict mode they raise ``ConfigValidationError``.
"""

from __future__ import annotations

import logging
import os
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Optional

import yaml

from core.errors import InvalidInputError

logger = logging.getLogger(__name__)


class ConfigValidationError(InvalidInputError):
    """Raised when strict run-config validation fails."""


def _env_flag(name: str, default: bool = False) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in {"1", "true", "yes", "on"}


def resolve_strict_config(default: bool = False) -> bool:
    """Resolve strict validation mode from the ``VEER_STRICT_CONFIG`` env."""
    return _env_flag("VEER_STRICT_CONFIG", default=default)


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters for one CLI run."""

    command: str = ""
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    window: Optional[tuple[str, str, str, str]] = None
    point_budget: int = 100_000
    epsilon_floor: float = 1e-12
    grid: int = 64
    tolerance: float = 1e-6
    seed: int = 0
    report_dir: str = "output/run_reports"
    extras: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        payload = asdict(self)
        if self.window is not None:
            payload["window"] = list(self.window)
        return payload

    def merged(self, **overrides: Any) -> "RunConfig":
        """Return a copy with every non-``None`` override applied."""
        known = {f.name for f in fields(self)}
        applied = {k: v for k, v in overrides.items() if k in known and v is not None}
        return replace(self, **applied)


_POSITIVE_INT_FIELDS = ("point_budget", "grid")
_POSITIVE_FLOAT_FIELDS = ("epsilon_floor", "tolerance")


def _fail(msg: str, strict: bool) -> None:
    if strict:
        raise ConfigValidationError(msg)
    logger.warning("%s; continuing with defaults", msg)


def load_config_payload(path: str, strict: bool = False) -> dict[str, Any]:
    """Load a run-config file as a mapping.

    Returns an empty dict on read/parse failures unless ``strict`` is set.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = yaml.safe_load(f)
    except FileNotFoundError as exc:
        msg = f"Run config file not found: {path}"
        if strict:
            raise ConfigValidationError(msg) from exc
        logger.warning("%s; continuing with defaults", msg)
        return {}
    except yaml.YAMLError as exc:
        msg = f"Failed to parse run config YAML at {path}: {exc}"
        if strict:
            raise ConfigValidationError(msg) from exc
        logger.warning("%s; continuing with defaults", msg)
        return {}

    if payload is None:
        _fail(f"Run config file is empty: {path}", strict)
        return {}
    if not isinstance(payload, dict):
        _fail(f"Unexpected run config payload type: {type(payload).__name__}", strict)
        return {}
    return payload


def _coerce_window(raw: Any) -> tuple[str, str, str, str]:
    if isinstance(raw, str):
        parts = [p.strip() for p in raw.split(",")]
    elif isinstance(raw, (list, tuple)):
        parts = [str(p).strip() for p in raw]
    else:
        raise ConfigValidationError(f"window must be 's0,s1,u0,u1', got {raw!r}")
    if len(parts) != 4 or any(not p for p in parts):
        raise ConfigValidationError(f"window needs four bounds, got {raw!r}")
    return (parts[0], parts[1], parts[2], parts[3])


def run_config_from_mapping(
    payload: dict[str, Any],
    command: str = "",
    strict: bool = False,
) -> RunConfig:
    """Validate a mapping and build a ``RunConfig``.

    Unknown keys are kept in ``extras``. Non-positive numeric values raise in
    strict mode and fall back to the field default otherwise.
    """
    defaults = RunConfig(command=command)
    known = {f.name for f in fields(RunConfig)} - {"extras"}
    values: dict[str, Any] = {}
    extras: dict[str, Any] = {}

    for key, raw in payload.items():
        name = str(key).replace("-", "_")
        if name not in known:
            extras[name] = raw
            continue
        if name == "window" and raw is not None:
            try:
                values[name] = _coerce_window(raw)
            except ConfigValidationError as exc:
                _fail(str(exc), strict)
            continue
        if name in _POSITIVE_INT_FIELDS or name in _POSITIVE_FLOAT_FIELDS:
            caster = int if name in _POSITIVE_INT_FIELDS else float
            try:
                number = caster(raw)
            except (TypeError, ValueError):
                _fail(f"{name} must be numeric, got {raw!r}", strict)
                continue
            if number <= 0:
                _fail(f"{name} must be positive, got {raw!r}", strict)
                continue
            values[name] = number
            continue
        if name == "seed":
            try:
                values[name] = int(raw)
            except (TypeError, ValueError):
                _fail(f"seed must be an integer, got {raw!r}", strict)
            continue
        values[name] = raw

    values.setdefault("command", command or defaults.command)
    return replace(defaults, extras=extras, **values)


def load_run_config(
    path: Optional[str],
    command: str = "",
    strict: bool = False,
) -> RunConfig:
    """Load a run config from ``path`` (or defaults when ``path`` is empty)."""
    if not path:
        return RunConfig(command=command)
    payload = load_config_payload(path, strict=strict)
    return run_config_from_mapping(payload, command=command, strict=strict)
