"""Core shared contracts and utilities."""

from core.errors import (
    EXIT_INVALID_INPUT,
    EXIT_INVARIANT_BREACH,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    InvalidInputError,
    InvariantBreach,
    VeerError,
    VerificationFailure,
    exit_code_for,
)
from core.structured_logging import (
    configure_structured_logging,
    derive_run_id,
    get_phase,
    get_run_id,
    phase_scope,
    set_run_id,
)
from core.run_config import (
    ConfigValidationError,
    RunConfig,
    load_run_config,
    resolve_strict_config,
    run_config_from_mapping,
)
from core.run_artifacts import (
    SCHEMA_VERSION,
    SchemaVersionError,
    dump_document,
    read_document,
    write_document,
    write_run_report,
)

__all__ = [
    # Errors
    "EXIT_INVALID_INPUT",
    "EXIT_INVARIANT_BREACH",
    "EXIT_OK",
    "EXIT_VERIFICATION_FAILED",
    "InvalidInputError",
    "InvariantBreach",
    "VeerError",
    "VerificationFailure",
    "exit_code_for",
    # Logging
    "configure_structured_logging",
    "derive_run_id",
    "get_phase",
    "get_run_id",
    "phase_scope",
    "set_run_id",
    # Configuration
    "ConfigValidationError",
    "RunConfig",
    "load_run_config",
    "resolve_strict_config",
    "run_config_from_mapping",
    # Artifacts
    "SCHEMA_VERSION",
    "SchemaVersionError",
    "dump_document",
    "read_document",
    "write_document",
    "write_run_report",
]
