"""Auto-halving of perturbation scales.

A trial is called with ``start``, ``start/2``, ``start/4``, ... until it
stops raising ``ScaleRejected``. Below the floor the last rejection is
re-raised as the caller's underflow error.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, TypeVar

from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from core.errors import VerificationFailure

logger = logging.getLogger(__name__)

T = TypeVar("T")


class ScaleRejected(VerificationFailure):
    """Raised by one trial when its scale fails the exact re-check."""


def halving_attempts(start: Fraction, floor: Fraction) -> int:
    """Number of scales ``start / 2**i`` that stay at or above ``floor``."""
    n, x = 0, start
    while x >= floor:
        n, x = n + 1, x / 2
    return max(n, 1)


def shrink_until_accepted(
    trial: Callable[[Fraction], T],
    start: Fraction,
    floor: Fraction,
    underflow: type[VerificationFailure],
    what: str,
) -> T:
    """Run ``trial`` on halving scales until one is accepted.

    Raises:
        underflow: when every scale down to ``floor`` was rejected.
    """
    retrying = Retrying(
        retry=retry_if_exception_type(ScaleRejected),
        stop=stop_after_attempt(halving_attempts(start, floor)),
        reraise=True,
    )
    try:
        for attempt in retrying:
            with attempt:
                n = attempt.retry_state.attempt_number
                scale = start / 2 ** (n - 1)
                if n > 1:
                    logger.debug("%s: retrying at scale %s", what, scale)
                return trial(scale)
    except ScaleRejected as exc:
        raise underflow(f"{what}: no scale down to {float(floor):.3g} passed ({exc})") from exc
    raise underflow(f"{what}: no attempt was made")  # pragma: no cover
