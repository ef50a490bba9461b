"""Rounding the turns of the diagonals into convex PL refinements.

Each turn ``v`` with neighbours ``prev`` and ``next`` is cut back to
``A = v - t(v - prev)`` and ``B = v + t(next - v)`` and replaced by points
of the quadratic Bezier curve with control points ``A, v, B``. The chords
of that curve have slopes strictly between the two incident slopes, in
order, so every arc keeps its maximal and minimal slopes. The construction
is affine-invariant, so rounding a representative rounds all of its lifts.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional, Sequence

from core.errors import InvalidInputError, VerificationFailure
from diagonals.arcs import NotTransverse, PLArc
from diagonals.system import DiagonalLift, DiagonalSystem
from orbitspace.space import Point, Window, point_to_float
from perturb.config import ROUND_RESOLUTION, ROUND_SPAN_FLOOR, ROUND_SPAN_START
from perturb.criteria import check_slope_criterion
from perturb.overlaps import overlapping_pairs
from perturb.scales import ScaleRejected, shrink_until_accepted
from rectangles.models import Rect

logger = logging.getLogger(__name__)


class NeighborhoodClash(VerificationFailure):
    """Raised when no neighborhood size keeps the rounded turns apart."""


def _lerp(a: Point, b: Point, t: Fraction) -> Point:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def _bezier(a: Point, v: Point, b: Point, t: Fraction) -> Point:
    return _lerp(_lerp(a, v, t), _lerp(v, b, t), t)


def turn_box(arc: PLArc, i: int, t: Fraction) -> Rect:
    """The neighborhood replaced when node ``i`` of ``arc`` is rounded at span ``t``."""
    v = arc.nodes[i]
    return Rect.bounding([_lerp(v, arc.nodes[i - 1], t), v, _lerp(v, arc.nodes[i + 1], t)])


def round_arc(arc: PLArc, t: Fraction, resolution: int = ROUND_RESOLUTION) -> PLArc:
    """``arc`` with every turn replaced by ``resolution`` chords of a Bezier corner."""
    if resolution < 1:
        raise InvalidInputError("rounding resolution must be positive")
    if not Fraction(0) < t < Fraction(1, 2):
        raise InvalidInputError(f"rounding span must lie in (0, 1/2), got {t}")
    turns = set(arc.turns())
    pts: list[Point] = []
    for i, v in enumerate(arc.nodes):
        if v not in turns:
            pts.append(v)
            continue
        a, b = _lerp(v, arc.nodes[i - 1], t), _lerp(v, arc.nodes[i + 1], t)
        pts.extend(_bezier(a, v, b, Fraction(j, resolution)) for j in range(resolution + 1))
    return PLArc.from_points(pts)


def _boxes_meet(a: Rect, b: Rect) -> bool:
    return a.s_lo <= b.s_hi and b.s_lo <= a.s_hi and a.u_lo <= b.u_hi and b.u_lo <= a.u_hi


def arc_meets_rect(arc: PLArc, box: Rect) -> bool:
    """Exact test of whether ``arc`` meets the closed ``box``."""
    lo, hi = max(arc.west[0], box.s_lo), min(arc.east[0], box.s_hi)
    if lo > hi:
        return False
    cuts = sorted({lo, hi} | {n[0] for n in arc.nodes if lo < n[0] < hi})
    for s0, s1 in zip(cuts, cuts[1:] or cuts):
        u0, u1 = arc.value_at(s0), arc.value_at(s1)
        if min(u0, u1) <= box.u_hi and box.u_lo <= max(u0, u1):
            return True
    return False


def neighborhood_clash(lifts: Sequence[DiagonalLift], t: Fraction) -> Optional[str]:
    """Why the turn neighborhoods at span ``t`` fail, or None when they are clear.

    Boxes around distinct turn points must be disjoint, and a lift that
    does not pass through a turn point must stay out of its box.
    """
    boxes: dict[Point, list[Rect]] = {}
    for d in lifts:
        turns = set(d.arc.turns())
        for i, v in enumerate(d.arc.nodes):
            if v in turns:
                boxes.setdefault(v, []).append(turn_box(d.arc, i, t))
    points = list(boxes)
    for x, v in enumerate(points):
        for w in points[x + 1:]:
            if any(_boxes_meet(a, b) for a in boxes[v] for b in boxes[w]):
                return f"neighborhoods of {point_to_float(v)} and {point_to_float(w)} meet"
        for d in lifts:
            if d.arc.contains(v):
                continue
            if any(arc_meets_rect(d.arc, box) for box in boxes[v]):
                return f"diagonal {d.orbit_id} enters the neighborhood of {point_to_float(v)}"
    return None


def round_corners(
    system: DiagonalSystem,
    resolution: int,
    window: Window,
    N: Optional[int] = None,
    point_budget: Optional[int] = None,
    span: Fraction = ROUND_SPAN_START,
    floor: Fraction = ROUND_SPAN_FLOOR,
) -> DiagonalSystem:
    """Round every turn of ``system`` with one span, halved until the neighborhoods are clear.

    The same-color slope criterion is re-run on the result; a span that adds
    violations is rejected like a clashing one.

    Raises:
        InvalidInputError: if the truncation still has overlaps.
        NeighborhoodClash: if no span down to ``floor`` works.
    """
    os = system.os
    lifts = system.materialize(window, N, point_budget)
    if overlapping_pairs(lifts):
        raise InvalidInputError("corners can only be rounded on an overlap-free system")
    if not any(arc.turns() for _, arc in system.arcs()):
        logger.info("No turns to round")
        return system
    before = len(check_slope_criterion(system, window, N, point_budget, colors="same").violations)

    def trial(t: Fraction) -> DiagonalSystem:
        reason = neighborhood_clash(lifts, t)
        if reason is not None:
            raise ScaleRejected(reason)
        current = system
        for oid, arc in system.arcs():
            try:
                rounded = round_arc(arc, t, resolution)
            except NotTransverse as exc:
                raise ScaleRejected(str(exc)) from exc
            for a, b in rounded.segments():
                if os.same_orbit(a, b):
                    raise ScaleRejected(f"rounded nodes of {oid} share an orbit")
            current = current.replace(oid, rounded)
        after = len(check_slope_criterion(current, window, N, point_budget, colors="same").violations)
        if after > before:
            raise ScaleRejected(f"same-color slope violations went from {before} to {after}")
        return current

    rounded = shrink_until_accepted(trial, span, floor, NeighborhoodClash, "round")
    logger.info("Rounded corners: %d -> %d nodes", system.node_count(), rounded.node_count())
    return rounded
