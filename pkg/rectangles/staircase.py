"""Staircases: edge rectangles sharing a corner, ordered by ``lies_above``.

The staircase at a lift ``b`` in a quadrant holds every edge rectangle with
``b`` as a corner and the other corner in that quadrant. Elements are listed
from the widest stored one upward, so each element lies above the one before
it. The stabilizer of ``b`` (squared when it reverses orientation) acts on the
staircase as the shift ``m -> m + m0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Optional

from core.errors import InvalidInputError, InvariantBreach
from exactfield.quadnum import QuadNum
from orbitspace.config import STAIRCASE_START_HEIGHT, STAIRCASE_START_WIDTH, WIDEN_ATTEMPTS
from orbitspace.points import PointOrbitSet, enumerate_lifts
from orbitspace.space import LatticeMap, OrbitSpace, Point, Window, point_to_json
from rectangles.enumerate import widening
from rectangles.models import EdgeRect, NotInC, WindowExhausted

logger = logging.getLogger(__name__)

QUADRANTS: dict[str, tuple[int, int]] = {"I": (1, 1), "II": (-1, 1), "III": (-1, -1), "IV": (1, -1)}


@dataclass(frozen=True)
class Staircase:
    """A finite, ordered stretch of a staircase and its deck recurrence."""

    base: Point
    quadrant: str
    elements: tuple[EdgeRect, ...]
    recurrence: Optional[LatticeMap] = None
    shift: Optional[int] = None

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, e: EdgeRect) -> Optional[int]:
        try:
            return self.elements.index(e)
        except ValueError:
            return None

    def far_corners(self) -> list[Point]:
        return [e.other_corner(self.base) for e in self.elements]

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "base": point_to_json(self.base),
            "quadrant": self.quadrant,
            "elements": [e.to_dict() for e in self.elements],
        }
        if self.recurrence is not None:
            payload["recurrence"] = self.recurrence.to_dict()
            payload["shift"] = self.shift
        return payload


def recurrence_map(os: OrbitSpace, base: Point) -> LatticeMap:
    """Deck element moving each staircase element at ``base`` one period up.

    It is the inverse of the primitive stabilizer, squared when the stabilizer
    swaps opposite quadrants.
    """
    stab = os.stabilizer_map(os.to_lattice(base))
    if os.sigma_A ** (stab.k % 2) < 0:
        stab = stab.compose(stab)
    return stab.inverse()


def _box_corners(
    os: OrbitSpace,
    C: PointOrbitSet,
    base: Point,
    quadrant: str,
    width: QuadNum,
    height: QuadNum,
    point_budget: Optional[int],
) -> list[Point]:
    ds, du = QUADRANTS[quadrant]
    s_bounds = sorted((base[0], base[0] + ds * width))
    u_bounds = sorted((base[1], base[1] + du * height))
    w = Window(s_bounds[0], s_bounds[1], u_bounds[0], u_bounds[1])
    return [
        p for p in enumerate_lifts(os, C, w, point_budget)
        if p[0] != base[0] and p[1] != base[1]
    ]


def _sweep(base: Point, corners: list[Point]) -> list[EdgeRect]:
    """Staircase elements among ``corners``, widest first.

    Corners sorted by stable distance keep a running minimum of unstable
    distance; a corner is an element exactly when it sets a new minimum.
    """
    ordered = sorted(corners, key=lambda p: abs(p[0] - base[0]))
    kept: list[EdgeRect] = []
    best: Optional[QuadNum] = None
    for q in ordered:
        du = abs(q[1] - base[1])
        if best is None or du < best:
            kept.append(EdgeRect.from_corners(base, q))
            best = du
    kept.reverse()
    return kept


def staircase(
    os: OrbitSpace,
    C: PointOrbitSet,
    base: Point,
    quadrant: str,
    count: int,
    point_budget: Optional[int] = None,
) -> Staircase:
    """The first ``count`` elements of the staircase at ``base`` in ``quadrant``.

    Elements start at the widest one of stable width at most one unit and go
    upward. The scanned height grows by lambda until ``count`` elements and one
    full period of the recurrence are in view; elements beyond are produced
    by the recurrence.

    Raises:
        NotInC: if ``base`` is not a lift of ``C``.
        InvalidInputError: for an unknown quadrant or ``count < 1``.
    """
    if quadrant not in QUADRANTS:
        raise InvalidInputError(f"unknown quadrant {quadrant!r}; use I, II, III or IV")
    if count < 1:
        raise InvalidInputError(f"staircase count must be positive, got {count}")
    if not C.contains(os, base):
        raise NotInC(f"staircase base {base!r} is not a lift of the drilled set")

    h = recurrence_map(os, base)
    width = os.q(STAIRCASE_START_WIDTH)
    elements: list[EdgeRect] = []
    m0: Optional[int] = None

    for attempt in widening(WIDEN_ATTEMPTS):
        with attempt:
            n = attempt.retry_state.attempt_number
            height = os.q(STAIRCASE_START_HEIGHT) * os.lam ** (n - 1)
            elements = _sweep(base, _box_corners(os, C, base, quadrant, width, height, point_budget))
            if not elements:
                raise WindowExhausted(f"no staircase element within height {float(height):.6g}")
            target = elements[0].mapped(os, h)
            m0 = elements.index(target) if target in elements else None
            if m0 is None:
                raise WindowExhausted("staircase period not yet in view")

    assert m0 is not None
    if m0 <= 0:
        raise InvariantBreach(f"staircase recurrence shift must be positive, got {m0}")
    while len(elements) < count:
        elements.append(elements[len(elements) - m0].mapped(os, h))
    logger.debug("Staircase at %r quadrant %s: period %d", base, quadrant, m0)
    return Staircase(base, quadrant, tuple(elements[:count]), recurrence=h, shift=m0)


def check_recurrence(os: OrbitSpace, st: Staircase) -> list[int]:
    """Indices ``m`` where ``g * S[m] != S[m + m0]`` among the stored elements."""
    if st.recurrence is None or st.shift is None:
        return []
    return [
        m for m in range(len(st.elements) - st.shift)
        if st.elements[m].mapped(os, st.recurrence) != st.elements[m + st.shift]
    ]
