"""Run artifact helpers: versioned JSON documents and run reports."""

from __future__ import annotations

import json
import os
from datetime import datetime, timezone
from typing import Any

from core.errors import InvalidInputError

SCHEMA_VERSION: str = "1.0"
SUPPORTED_SCHEMA_MAJORS: frozenset[int] = frozenset({1})


class SchemaVersionError(InvalidInputError):
    """Raised when a document carries a schema major this build cannot read."""


def dump_document(payload: dict[str, Any]) -> str:
    """Render a payload as deterministic JSON text with the schema version set."""
    document = dict(payload)
    document.setdefault("schema_version", SCHEMA_VERSION)
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write_document(payload: dict[str, Any], path: str) -> str:
    """Write a versioned JSON document and return its path."""
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_document(payload))
    return path


def read_document(path: str) -> dict[str, Any]:
    """Read a versioned JSON document, refusing unknown schema majors."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except FileNotFoundError as exc:
        raise InvalidInputError(f"Document not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"Document is not valid JSON: {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise InvalidInputError(
            f"Unexpected document payload type: {type(payload).__name__}"
        )
    check_schema_version(payload)
    return payload


def check_schema_version(payload: dict[str, Any]) -> None:
    """Raise ``SchemaVersionError`` unless the payload's major version is known."""
    version = str(payload.get("schema_version", ""))
    major_text = version.split(".", 1)[0]
    try:
        major = int(major_text)
    except ValueError as exc:
        raise SchemaVersionError(f"Missing or malformed schema_version: {version!r}") from exc
    if major not in SUPPORTED_SCHEMA_MAJORS:
        raise SchemaVersionError(f"Unsupported schema major version: {version}")


def write_run_report(
    report: dict[str, Any],
    run_id: str,
    output_dir: str = "output/run_reports",
    include_timestamp: bool = False,
) -> str:
    """Write a JSON run report and return its path.

    Reports are deterministic unless ``include_timestamp`` is set.
    """
    os.makedirs(output_dir, exist_ok=True)
    payload = dict(report)
    payload.setdefault("run_id", run_id)
    if include_timestamp:
        payload.setdefault("timestamp_utc", datetime.now(timezone.utc).isoformat())
    path = os.path.join(output_dir, f"{run_id}.json")
    return write_document(payload, path)
