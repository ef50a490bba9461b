"""Symbolic lift heights ``(1/2) log_lambda |m| + k``.

Heights are never evaluated as logarithms. Two heights compare as
``|m1| * lambda**(2*k1)`` against ``|m2| * lambda**(2*k2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Any

from core.errors import InvalidInputError
from exactfield.quadnum import QuadNum, qn_to_float


@total_ordering
@dataclass(frozen=True, eq=False)
class LiftHeight:
    """Height of a segment of slope ``magnitude`` shifted by ``shift`` deck levels."""

    magnitude: QuadNum
    shift: int
    lam: QuadNum

    def __post_init__(self) -> None:
        if self.magnitude.sign() <= 0:
            raise InvalidInputError("lift height needs a positive slope magnitude")

    def _scaled_ratio_sign(self, other: "LiftHeight") -> int:
        # sign of |m1| * lam**(2(k1-k2)) - |m2|
        lhs = self.magnitude * self.lam ** (2 * (self.shift - other.shift))
        return (lhs - other.magnitude).sign()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LiftHeight):
            return NotImplemented
        return self._scaled_ratio_sign(other) == 0

    def __lt__(self, other: "LiftHeight") -> bool:
        return self._scaled_ratio_sign(other) < 0

    def __hash__(self) -> int:
        # Normalise the shift so that equal heights hash alike.
        m, k = self.magnitude, self.shift
        lam2 = self.lam * self.lam
        while m >= lam2:
            m, k = m / lam2, k + 1
        while m < 1:
            m, k = m * lam2, k - 1
        return hash((m, k))

    def approx(self) -> float:
        """Float value of the height, for display."""
        return 0.5 * math.log(qn_to_float(self.magnitude), qn_to_float(self.lam)) + self.shift

    def to_dict(self) -> dict[str, Any]:
        return {"magnitude": self.magnitude.to_json(), "shift": self.shift, "approx": self.approx()}


def lift_height_of_slope(slope: QuadNum, shift: int, lam: QuadNum) -> LiftHeight:
    """Height of the canonical lift of a segment of the given slope."""
    return LiftHeight(abs(slope), shift, lam)
