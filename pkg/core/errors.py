"""Project-wide error hierarchy and process exit codes.

Every failure raised by the geometry, triangulation and certification
packages derives from one of three bases. The CLI maps the base class to
its exit code:

* ``InvalidInputError``   -> 1 (bad monodromy, bad puncture file, bad flags)
* ``VerificationFailure`` -> 2 (a computation ran but a checked property failed)
* ``InvariantBreach``     -> 3 (internal consistency failure)
"""

from __future__ import annotations

EXIT_OK: int = 0
EXIT_INVALID_INPUT: int = 1
EXIT_VERIFICATION_FAILED: int = 2
EXIT_INVARIANT_BREACH: int = 3


class VeerError(Exception):
    """Base class for all errors raised by this project."""

    exit_code: int = EXIT_INVARIANT_BREACH


class InvalidInputError(VeerError, ValueError):
    """Raised when user-supplied data violates a documented precondition."""

    exit_code = EXIT_INVALID_INPUT


class VerificationFailure(VeerError, RuntimeError):
    """Raised when a construction cannot meet a checked property."""

    exit_code = EXIT_VERIFICATION_FAILED


class InvariantBreach(VeerError, RuntimeError):
    """Raised when internal data contradicts an invariant that should always hold."""

    exit_code = EXIT_INVARIANT_BREACH


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit code of its base class."""
    if isinstance(exc, VeerError):
        return exc.exit_code
    return EXIT_INVARIANT_BREACH
