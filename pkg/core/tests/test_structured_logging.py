"""Tests for run correlation helpers."""

import logging

from core.errors import (
    InvalidInputError,
    InvariantBreach,
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


def test_derive_run_id_is_deterministic() -> None:
    a = derive_run_id("build", {"word": "LR", "window": None})
    b = derive_run_id("build", {"window": None, "word": "LR"})
    c = derive_run_id("build", {"word": "LLR", "window": None})
    assert a == b
    assert a != c
    assert a.startswith("build-")


def test_phase_scope_sets_record_fields(caplog) -> None:
    configure_structured_logging(logging.INFO)
    set_run_id("unit-run")
    assert get_run_id() == "unit-run"
    with caplog.at_level(logging.INFO):
        with phase_scope("assemble"):
            logging.getLogger("veer.test").info("inside")
    assert any(r.getMessage() == "inside" for r in caplog.records)


def test_exit_codes_follow_hierarchy() -> None:
    assert exit_code_for(InvalidInputError("x")) == 1
    assert exit_code_for(VerificationFailure("x")) == 2
    assert exit_code_for(InvariantBreach("x")) == 3
    assert exit_code_for(KeyError("x")) == 3
    assert isinstance(InvalidInputError("x"), ValueError)


def test_phases_nest_and_unwind() -> None:
    assert get_phase() == "-"
    with phase_scope("pipeline"):
        with phase_scope("peel"):
            assert get_phase() == "pipeline/peel"
        assert get_phase() == "pipeline"
    assert get_phase() == "-"


def test_configure_installs_one_stderr_handler() -> None:
    configure_structured_logging("DEBUG")
    configure_structured_logging(logging.INFO)
    root = logging.getLogger()
    assert sum(h.get_name() == "veer-stderr" for h in root.handlers) == 1
    assert root.level == logging.INFO
