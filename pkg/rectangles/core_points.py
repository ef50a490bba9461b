"""Core points of edge rectangles and the boxes around them.

Starting from an edge rectangle ``R_0``, each ``R_{n+1}`` is the top edge of
the tetrahedron rectangle above ``R_n``. The walk is done in normal form, so
it stays in a bounded region, and stops when an orbit repeats. The repeating
deck element maps ``R_j`` onto ``R_n``; its unique fixed point is the core.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from core.errors import InvariantBreach
from exactfield.quadnum import QuadNum
from orbitspace.config import CORE_ITERATION_CAP
from orbitspace.monodromy import LatticePoint, mat_pow
from orbitspace.normal_form import NormalKey, normalize_points
from orbitspace.points import PointOrbitSet
from orbitspace.space import LatticeMap, OrbitSpace, Point, point_to_json
from rectangles.config import NEIGHBOUR_WALK_CAP
from rectangles.models import EdgeRect, NoRecurrence, Rect
from rectangles.tetra import tetra_above, tetra_below

logger = logging.getLogger(__name__)

ABOVE = "above"
BELOW = "below"


@dataclass(frozen=True)
class Neighbour:
    """An edge rectangle next to another one in the staircase at ``corner``."""

    corner: Point
    direction: str
    rect: EdgeRect


@dataclass(frozen=True)
class CorePoint:
    point: Point
    pinched: bool
    recurrence: LatticeMap
    steps: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "point": point_to_json(self.point),
            "pinched": self.pinched,
            "recurrence": self.recurrence.to_dict(),
            "steps": self.steps,
        }


def fixed_point(os: OrbitSpace, h: LatticeMap) -> LatticePoint:
    """Solve ``A^k x + v = x`` exactly; ``k`` must be nonzero."""
    if h.k == 0:
        raise InvariantBreach(f"translation {h.to_dict()} has no fixed point")
    (a, b), (c, d) = mat_pow(os.A, h.k)
    m = ((1 - a, -b), (-c, 1 - d))
    det = Fraction(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    v1, v2 = h.v
    return ((m[1][1] * v1 - m[0][1] * v2) / det, (m[0][0] * v2 - m[1][0] * v1) / det)


@dataclass
class CoreSolver:
    """Core-point computations over one lift set, cached by orbit key."""

    os: OrbitSpace
    C: PointOrbitSet
    point_budget: Optional[int] = None
    cap: int = CORE_ITERATION_CAP
    _cache: dict[NormalKey, tuple[LatticePoint, LatticeMap, int]] = field(default_factory=dict)

    def _normal_core(self, e: EdgeRect) -> tuple[NormalKey, LatticeMap, LatticePoint, LatticeMap, int]:
        key0, g0 = normalize_points(self.os, e.corners)
        if key0 in self._cache:
            x, h, steps = self._cache[key0]
            return key0, g0, x, h, steps

        current = e.mapped(self.os, g0)
        G = self.os.lattice_map(0, (0, 0))
        seen: dict[NormalKey, tuple[int, LatticeMap]] = {key0: (0, G)}
        for n in range(1, self.cap + 1):
            top = tetra_above(self.os, self.C, current, self.point_budget).top_edge()
            key, m = normalize_points(self.os, top.corners)
            G = m.compose(G)
            current = top.mapped(self.os, m)
            if key in seen:
                j, Gj = seen[key]
                h = G.inverse().compose(Gj)
                x = fixed_point(self.os, h)
                self._cache[key0] = (x, h, n)
                logger.debug("Core recurrence after %d steps (repeat of step %d)", n, j)
                return key0, g0, x, h, n
            seen[key] = (n, G)
        raise NoRecurrence(f"no orbit repeat within {self.cap} steps from {e.to_dict()}")

    def core_of(self, e: EdgeRect) -> tuple[Point, LatticeMap, int]:
        """Core point of ``e`` with its fixing deck element and the walk length."""
        _, g0, x, h, steps = self._normal_core(e)
        back = g0.inverse()
        point = self.os.to_eigen(back.apply(x))
        return point, back.compose(h).compose(g0), steps

    def neighbours(self, e: EdgeRect) -> list[Neighbour]:
        """The four staircase neighbours of ``e``: above and below at each corner."""
        up = tetra_above(self.os, self.C, e, self.point_budget)
        down = tetra_below(self.os, self.C, e, self.point_budget)
        out: list[Neighbour] = []
        for c in e.corners:
            p = up.north if c == e.lower else up.south
            out.append(Neighbour(c, ABOVE, EdgeRect.from_corners(c, p)))
        for c in e.corners:
            p = down.east if c == e.west else down.west
            out.append(Neighbour(c, BELOW, EdgeRect.from_corners(c, p)))
        return out

    def core_point(self, e: EdgeRect) -> CorePoint:
        point, h, steps = self.core_of(e)
        pinched = any(self.core_of(n.rect)[0] == point for n in self.neighbours(e))
        return CorePoint(point, pinched, h, steps)

    def first_distinct_core(self, e: EdgeRect, corner: Point, direction: str) -> Point:
        """Core of the first rectangle along a staircase whose core differs from that of ``e``."""
        core = self.core_of(e)[0]
        current = e
        for _ in range(NEIGHBOUR_WALK_CAP):
            nxt = next(
                n.rect for n in self.neighbours(current)
                if n.corner == corner and n.direction == direction
            )
            other = self.core_of(nxt)[0]
            if other != core:
                return other
            current = nxt
        raise InvariantBreach(f"pinched run longer than {NEIGHBOUR_WALK_CAP} at {e.to_dict()}")

    def core_box(self, e: EdgeRect) -> Rect:
        """Box around the core with half-extents a quarter of its clearances.

        Clearances are the distances to the sides of ``e`` and the stable and
        unstable gaps to the nearest differing cores along both staircases.
        """
        c = self.core_of(e)[0]
        r = e.rect
        s_gaps: list[QuadNum] = [c[0] - r.s_lo, r.s_hi - c[0]]
        u_gaps: list[QuadNum] = [c[1] - r.u_lo, r.u_hi - c[1]]
        for corner in e.corners:
            for direction in (ABOVE, BELOW):
                other = self.first_distinct_core(e, corner, direction)
                s_gaps.append(abs(other[0] - c[0]))
                u_gaps.append(abs(other[1] - c[1]))
        half_s = min(s_gaps) / 4
        half_u = min(u_gaps) / 4
        return Rect(c[0] - half_s, c[0] + half_s, c[1] - half_u, c[1] + half_u)


def core_point(
    os: OrbitSpace,
    C: PointOrbitSet,
    R: EdgeRect,
    solver: Optional[CoreSolver] = None,
) -> tuple[Point, bool]:
    """Core point of ``R`` and whether it is shared with a staircase neighbour.

    Raises:
        NoRecurrence: if no orbit repeats within the iteration cap.
    """
    result = (solver or CoreSolver(os, C)).core_point(R)
    return result.point, result.pinched
