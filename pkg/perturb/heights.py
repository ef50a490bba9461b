"""Height bounds and canonical-lift heights of diagonal segments.

A lift placed by a deck map of height ``k`` has planar slopes
``lam**(-2k)`` times those of its representative, so the canonical height
of a lift segment is ``(1/2) log_lam |m_rep| - k``. Heights are compared
symbolically through ``LiftHeight``.
"""

from __future__ import annotations

from typing import Iterable, Optional

from diagonals.arcs import PLArc, slope_between
from diagonals.system import DiagonalLift, DiagonalSystem
from exactfield.lift_height import LiftHeight, lift_height_of_slope
from exactfield.quadnum import QuadNum
from orbitspace.normal_form import apply_lattice_map
from orbitspace.space import OrbitSpace, Point


def height_bound_of_arcs(arcs: Iterable[PLArc], lam: QuadNum) -> int:
    """Least ``N`` with ``lam**(2N) > max|slope| / min|slope|`` over ``arcs``."""
    arcs = list(arcs)
    one = QuadNum.rational(1, lam.D)
    if not arcs:
        return 1
    ratio = max(a.max_abs_slope() for a in arcs) / min(a.min_abs_slope() for a in arcs)
    lam2 = lam * lam
    n, power = 0, one
    while not power > ratio:
        n, power = n + 1, power * lam2
    return n


def height_bound(system: DiagonalSystem) -> int:
    """Height bound over the representative arcs of ``system``."""
    return height_bound_of_arcs((arc for _, arc in system.arcs()), system.os.lam)


def segment_lift_height(arc: PLArc, i: int, k: int, lam: QuadNum) -> LiftHeight:
    """Height of segment ``i`` of ``arc`` shifted by ``k`` levels."""
    a, b = arc.nodes[i], arc.nodes[i + 1]
    return lift_height_of_slope(slope_between(a, b), k, lam)


def lift_segment_heights(os: OrbitSpace, lift: DiagonalLift) -> list[LiftHeight]:
    """Canonical heights of the segments of ``lift``, west to east.

    Slopes are taken in the representative frame and shifted by the lift's
    deck height, so no power of lambda is ever applied to a slope.
    """
    back = lift.deck.inverse()
    out: list[LiftHeight] = []
    for a, b in lift.arc.segments():
        m = slope_between(apply_lattice_map(os, back, a), apply_lattice_map(os, back, b))
        out.append(lift_height_of_slope(m, -lift.height, os.lam))
    return out


def flank_heights(
    os: OrbitSpace,
    lift: DiagonalLift,
    p: Point,
) -> tuple[Optional[LiftHeight], Optional[LiftHeight]]:
    """Heights of the segments of ``lift`` arriving at ``p`` from the west and leaving east."""
    arc = lift.arc
    heights = lift_segment_heights(os, lift)
    west: Optional[LiftHeight] = None
    east: Optional[LiftHeight] = None
    if p[0] > arc.west[0]:
        keys = [n[0] for n in arc.nodes]
        west = heights[next(i for i in range(len(keys) - 1) if keys[i] < p[0] <= keys[i + 1])]
    if p[0] < arc.east[0]:
        east = heights[arc.segment_index(p[0])]
    return west, east
