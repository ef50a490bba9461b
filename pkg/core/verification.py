"""Report objects returned by the verifiers.

Verifiers never raise for a failed property. They count what they checked,
collect violations with a witness each, and record the scope of the check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Literal, Optional


@dataclass
class Violation:
    """One failed check and the data that shows it."""

    check: str
    witness: Any
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"check": self.check, "witness": self.witness, "detail": self.detail}


@dataclass
class CheckReport:
    """Outcome of one named check over a finite scope."""

    name: str
    checked_pairs: int = 0
    violations: list[Violation] = field(default_factory=list)
    window: Optional[dict[str, Any]] = None
    height_bound: Optional[int] = None
    status: Literal["ok", "failed", "skipped"] = "ok"
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "failed" and not self.violations

    def add(self, check: str, witness: Any, detail: str = "") -> None:
        self.violations.append(Violation(check, witness, detail))
        self.status = "failed"

    def count(self, n: int = 1) -> None:
        self.checked_pairs += n

    @classmethod
    def skipped(cls, name: str, reason: str) -> "CheckReport":
        return cls(name=name, status="skipped", reason=reason)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "status": "failed" if self.violations else self.status,
            "reason": self.reason,
            "checked_pairs": self.checked_pairs,
            "violations": [v.to_dict() for v in self.violations],
            "window": self.window,
            "height_bound": self.height_bound,
        }


def merge_status(reports: list[CheckReport]) -> bool:
    """True when no report failed."""
    return all(r.passed for r in reports)
