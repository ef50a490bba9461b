"""Rotating misalignments out of opposite-color crossings.

A misalignment is a crossing point ``w`` of opposite-color diagonals
``R1 < R2`` where ``d1`` is at least as steep as ``d2`` on some flank. The
lower diagonal is bent in a small span around ``w``: it is cut at
``w -+ h``, passes through ``w`` with slope ``(1 - eps)`` times the flattest
upper slope there, and rejoins itself along two steeper connecting pieces.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from core.errors import InvariantBreach
from diagonals.arcs import NotTransverse, PLArc, slope_between
from diagonals.buoys import EpsilonUnderflow
from diagonals.system import DiagonalLift, DiagonalSystem
from exactfield.quadnum import QuadNum
from orbitspace.space import Point, Window, point_to_float, point_to_json
from perturb.config import ROTATE_MAX_ROUNDS, ROTATE_SPAN_FLOOR, ROTATE_SPAN_START
from perturb.criteria import check_slope_criterion, crossing_point, flank_slopes, ordered_pairs
from perturb.heights import height_bound
from perturb.rounding import arc_meets_rect
from perturb.scales import ScaleRejected, shrink_until_accepted
from rectangles.models import RED, Rect

logger = logging.getLogger(__name__)

UPWARD = "upward"
DOWNWARD = "downward"


@dataclass(frozen=True)
class Misalignment:
    pair: tuple[DiagonalLift, DiagonalLift]
    point: Point
    direction: str

    @property
    def lower(self) -> DiagonalLift:
        return self.pair[0]

    @property
    def upper(self) -> DiagonalLift:
        return self.pair[1]

    def to_dict(self) -> dict[str, Any]:
        return {
            "pair": [self.lower.rect.to_dict(), self.upper.rect.to_dict()],
            "orbit_ids": [self.lower.orbit_id, self.upper.orbit_id],
            "point": point_to_json(self.point),
            "direction": self.direction,
        }


def misalignments_among(lifts: Sequence[DiagonalLift]) -> list[Misalignment]:
    out: list[Misalignment] = []
    for lower, upper in ordered_pairs(lifts):
        if lower.color == upper.color:
            continue
        p, _ = crossing_point(lower, upper)
        if p is None:
            continue
        if all(abs(a) < abs(b) for a, b in zip(flank_slopes(lower, p), flank_slopes(upper, p))):
            continue
        out.append(Misalignment((lower, upper), p, UPWARD if lower.color == RED else DOWNWARD))
    return out


def find_misalignments(
    system: DiagonalSystem,
    window: Window,
    N: Optional[int] = None,
    point_budget: Optional[int] = None,
) -> list[Misalignment]:
    return misalignments_among(system.materialize(window, N, point_budget))


def _slope_window(old: Sequence[QuadNum], lam: QuadNum, N: int) -> tuple[QuadNum, QuadNum]:
    spread = lam ** N
    return min(abs(m) for m in old) / spread, max(abs(m) for m in old) * spread


def rotation_arc(
    arc: PLArc,
    w: Point,
    uppers: Sequence[DiagonalLift],
    eps: Fraction,
    h: QuadNum,
    lam: QuadNum,
    N: int,
) -> tuple[PLArc, Rect]:
    """``arc`` bent at ``w`` within ``[w.s - h, w.s + h]``, and the box the bend lives in.

    Raises:
        ScaleRejected: when the bent arc is not transverse or a new slope
            leaves ``[lam**-N, lam**N]`` times the old ones.
    """
    ws, wu = w
    target = min(abs(m) for d in uppers for m in flank_slopes(d, w) if m is not None)
    m_star = target * (1 - eps) * arc.sign
    a = (ws - h, arc.value_at(ws - h))
    b = (ws + h, arc.value_at(ws + h))
    half = h / 2
    p = (ws - half, wu - m_star * half)
    q = (ws + half, wu + m_star * half)
    removed = [n for n in arc.nodes if ws - h < n[0] < ws + h]
    try:
        bent = PLArc.from_points([n for n in arc.nodes if n not in removed] + [a, p, q, b])
    except NotTransverse as exc:
        raise ScaleRejected(str(exc)) from exc
    old = [slope_between(x, y) for x, y in zip([a, *removed], [*removed, b])]
    lo, hi = _slope_window(old, lam, N)
    for m in (slope_between(a, p), m_star, slope_between(q, b)):
        if not lo <= abs(m) <= hi:
            raise ScaleRejected(f"bent slope {float(m):.6g} leaves the allowed range at {point_to_float(w)}")
    return bent, Rect.bounding([a, p, q, b, *removed])


def _reach(arc: PLArc, w: Point) -> QuadNum:
    return min(w[0] - arc.west[0], arc.east[0] - w[0])


def _local_trial(
    lifts: Sequence[DiagonalLift],
    target: Misalignment,
    uppers: Sequence[DiagonalLift],
    eps: Fraction,
    lam: QuadNum,
    N: int,
    arc: PLArc,
) -> Callable[[Fraction], PLArc]:
    lower, w = target.lower, target.point
    reach = _reach(arc, w)

    def trial(x: Fraction) -> PLArc:
        bent, box = rotation_arc(arc, w, uppers, eps, reach * x, lam, N)
        for d in lifts:
            if d.rect != lower.rect and not d.arc.contains(w) and arc_meets_rect(d.arc, box):
                raise ScaleRejected(f"diagonal {d.orbit_id} crosses the bend at {point_to_float(w)}")
        return bent

    return trial


def _group(found: Sequence[Misalignment]) -> tuple[Misalignment, list[DiagonalLift]]:
    target = found[0]
    uppers = [m.upper for m in found if m.lower.rect == target.lower.rect and m.point == target.point]
    return target, uppers


def rotate_among(
    lifts: Sequence[DiagonalLift],
    eps: Fraction,
    lam: QuadNum,
    N: int,
    span: Fraction = ROTATE_SPAN_START,
) -> list[DiagonalLift]:
    """Resolve the misalignments of a fixed set of lifts one lower diagonal at a time.

    Raises:
        EpsilonUnderflow: if some bend cannot be fitted.
    """
    current = list(lifts)
    for _ in range(ROTATE_MAX_ROUNDS):
        found = misalignments_among(current)
        if not found:
            return current
        target, uppers = _group(found)
        local = _local_trial(current, target, uppers, eps, lam, N, target.lower.arc)

        def trial(x: Fraction) -> list[DiagonalLift]:
            bent = local(x)
            trial_lifts = [
                DiagonalLift(d.orbit_id, d.rect, bent, d.deck) if d.rect == target.lower.rect else d
                for d in current
            ]
            if len(misalignments_among(trial_lifts)) >= len(found):
                raise ScaleRejected("bend did not reduce the misalignments")
            return trial_lifts

        current = shrink_until_accepted(trial, span, ROTATE_SPAN_FLOOR, EpsilonUnderflow, "rotate")
    raise InvariantBreach(f"misalignments remain after {ROTATE_MAX_ROUNDS} rounds")


def rotate_misalignments(
    system: DiagonalSystem,
    eps: Fraction,
    window: Window,
    N: Optional[int] = None,
    point_budget: Optional[int] = None,
    span: Fraction = ROTATE_SPAN_START,
    max_rounds: int = ROTATE_MAX_ROUNDS,
    floor: Fraction = ROTATE_SPAN_FLOOR,
) -> DiagonalSystem:
    """Bend lower diagonals until no misalignment is left in the truncation.

    A misalignment-free system is returned as is. Each bend is carried back
    to the orbit representative, so every lift of the orbit bends with it;
    a bend is kept only when the misalignment count over the window drops
    and the slope criterion reports no more violations than before.

    Raises:
        EpsilonUnderflow: if a bend cannot be fitted at any span down to the floor.
        InvariantBreach: if misalignments remain after ``max_rounds`` bends.
    """
    os = system.os
    bound = N if N is not None else height_bound(system)
    found = find_misalignments(system, window, N, point_budget)
    if not found:
        logger.info("No misalignments to rotate")
        return system
    current = system
    for rounds in range(max_rounds):
        if not found:
            logger.info("Rotated misalignments away in %d bends", rounds)
            return current
        lifts = current.materialize(window, N, point_budget)
        target, uppers = _group(found)
        lower = target.lower
        here = current.entries[lower.orbit_id].arc.mapped(os, lower.deck)
        local = _local_trial(lifts, target, uppers, eps, os.lam, bound, here)
        before_slope = len(check_slope_criterion(current, window, N, point_budget).violations)
        before = len(found)
        state = current

        def trial(x: Fraction) -> tuple[DiagonalSystem, list[Misalignment]]:
            bent = local(x)
            for a, b in bent.segments():
                if os.same_orbit(a, b):
                    raise ScaleRejected("bent nodes share an orbit")
            if any(state.C.contains(os, n) for n in bent.nodes[1:-1]):
                raise ScaleRejected("bend puts a node on a drilled orbit")
            candidate = state.replace(lower.orbit_id, bent.mapped(os, lower.deck.inverse()))
            after = find_misalignments(candidate, window, N, point_budget)
            if len(after) >= before:
                raise ScaleRejected(f"misalignments went from {before} to {len(after)}")
            if len(check_slope_criterion(candidate, window, N, point_budget).violations) > before_slope:
                raise ScaleRejected("bend added slope-criterion violations")
            return candidate, after

        current, found = shrink_until_accepted(trial, span, floor, EpsilonUnderflow, "rotate")
        logger.debug("Bent %s at %s (%s)", lower.orbit_id, point_to_float(target.point), target.direction)
    if found:
        raise InvariantBreach(f"misalignments remain after {max_rounds} bends")
    return current
