"""Peeling overlaps apart.

For a peripheral elementary overlap ``(Q1, Q2)`` with intersection end
``u``, let ``v`` be the next bookkeeping node and ``sigma`` the straight
stretch between them. Every diagonal of the upper family (``Q2`` and the
same-color diagonals above it that leave ``v`` along ``sigma``) is rerouted
from ``v`` along a slightly steeper line until it meets its own next
segment. When ``Q2`` leaves ``u`` straight, the mirror move pushes the lower
family flatter instead. Edits are made on lifts and carried back to the
orbit representatives, so the whole orbit moves at once.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from core.errors import InvalidInputError, InvariantBreach
from diagonals.arcs import NotTransverse, PLArc, slope_between
from diagonals.buoys import EpsilonUnderflow
from diagonals.system import DiagonalLift, DiagonalSystem
from diagonals.verify import verify_plo
from exactfield.quadnum import QuadNum
from orbitspace.points import PointOrbitSet
from orbitspace.space import Point, Window, point_to_float
from perturb.config import PEEL_EPS_FLOOR, PEEL_EPS_START, PEEL_MAX_STEPS
from perturb.overlaps import (
    NoOverlap,
    OrbitTest,
    Overlap,
    bookkeeping_nodes,
    find_peripheral_elementary,
    progress_measure,
)
from perturb.scales import ScaleRejected, shrink_until_accepted
from rectangles.order import lies_above

logger = logging.getLogger(__name__)

PAIR_CHECKS = ("corner_pair_overlap", "overlap_disconnected", "slope_inequality")


@dataclass(frozen=True)
class PeelPlan:
    family: tuple[DiagonalLift, ...]
    start: Point        # v, where the rerouted stretch begins
    end: Point          # u, the intersection end being removed
    slope: QuadNum      # slope of sigma
    upper: bool

    @property
    def toward(self) -> int:
        return 1 if self.end[0] > self.start[0] else -1

    def new_slope(self, eps: Fraction) -> QuadNum:
        return self.slope * (1 + eps) if self.upper else self.slope * (1 - eps)


def _leaving(arc: PLArc, p: Point, toward: int) -> Optional[QuadNum]:
    return arc.slope_east_of(p) if toward > 0 else arc.slope_west_of(p)


def plan_peel(lifts: Sequence[DiagonalLift], ov: Overlap, same_orbit: OrbitTest) -> PeelPlan:
    """The family to reroute for ``ov`` and the stretch it leaves.

    Raises:
        InvalidInputError: if ``ov`` carries no intersection end.
        NoOverlap: if the pair no longer shares a segment.
    """
    if ov.end is None:
        raise InvalidInputError("only a peripheral overlap can be peeled")
    q1, q2 = ov.lower, ov.upper
    nodes = bookkeeping_nodes(q1, q2, same_orbit)
    if len(nodes) < 2:
        raise NoOverlap("the pair meets in at most one point")
    u = ov.end
    if u == nodes[0]:
        v = nodes[1]
    elif u == nodes[-1]:
        v = nodes[-2]
    else:
        raise InvariantBreach(f"{point_to_float(u)} is not an end of the shared subarc")
    m = slope_between(u, v)
    toward = 1 if u[0] > v[0] else -1
    beyond_upper, beyond_lower = _leaving(q2.arc, u, toward), _leaving(q1.arc, u, toward)
    if beyond_upper is not None and abs(beyond_upper) > abs(m):
        upper = True
    elif beyond_lower is not None and abs(beyond_lower) < abs(m):
        upper = False
    else:
        raise InvariantBreach(f"neither diagonal turns off the shared subarc at {point_to_float(u)}")
    if upper:
        family = [
            d for d in lifts
            if d.color == q2.color and (d.rect == q2.rect or lies_above(d.rect, q2.rect))
            and d.arc.contains(v) and _leaving(d.arc, v, toward) == m
        ]
    else:
        family = [
            d for d in lifts
            if d.color == q1.color and (d.rect == q1.rect or lies_above(q1.rect, d.rect))
            and d.arc.contains(v) and _leaving(d.arc, v, toward) == m
        ]
    return PeelPlan(tuple(family), v, u, m, upper)


def reroute(arc: PLArc, v: Point, toward: int, slope: QuadNum, new_slope: QuadNum) -> tuple[PLArc, Point]:
    """Replace the stretch of ``arc`` from ``v`` along ``slope`` and onto its next segment.

    The new segment leaves ``v`` with ``new_slope`` and ends at ``b``, a point
    strictly inside the first segment of ``arc`` past the stretch.

    Raises:
        ScaleRejected: if the line does not meet that segment in its interior.
    """

    def line(s: QuadNum) -> QuadNum:
        return v[1] + new_slope * (s - v[0])

    ahead = [n for n in arc.nodes if ((n[0] - v[0]) * toward).sign() > 0]
    if toward < 0:
        ahead.reverse()
    prev = v
    for n in ahead:
        if slope_between(prev, n) == slope:
            prev = n
            continue
        if prev == v:
            raise ScaleRejected(f"arc does not leave {point_to_float(v)} along the stretch")
        g0, g1 = prev[1] - line(prev[0]), n[1] - line(n[0])
        if g0.sign() * g1.sign() >= 0:
            raise ScaleRejected(f"rerouted line misses the segment after {point_to_float(prev)}")
        s = prev[0] + g0 * (n[0] - prev[0]) / (g0 - g1)
        b = (s, line(s))
        lo, hi = min(v[0], s), max(v[0], s)
        kept = [p for p in arc.nodes if not lo < p[0] < hi]
        try:
            return PLArc.from_points(kept + [v, b]), b
        except NotTransverse as exc:
            raise ScaleRejected(str(exc)) from exc
    raise ScaleRejected(f"arc ends along the stretch from {point_to_float(v)}")


def peel_lifts(
    lifts: Sequence[DiagonalLift],
    ov: Overlap,
    eps: Fraction,
    same_orbit: OrbitTest,
) -> dict[object, PLArc]:
    """New arcs, keyed by rectangle, for the family rerouted by one peel."""
    plan = plan_peel(lifts, ov, same_orbit)
    new_slope = plan.new_slope(eps)
    return {d.rect: reroute(d.arc, plan.start, plan.toward, plan.slope, new_slope)[0] for d in plan.family}


def _pair_violations(system: DiagonalSystem, window: Window, N: Optional[int], punctures, budget) -> int:
    report = verify_plo(system, window, N, punctures, budget)
    return sum(1 for v in report.violations if v.check in PAIR_CHECKS)


def peel(
    system: DiagonalSystem,
    ov: Overlap,
    eps: Fraction,
    window: Window,
    N: Optional[int] = None,
    punctures: Optional[PointOrbitSet] = None,
    point_budget: Optional[int] = None,
    floor: Fraction = PEEL_EPS_FLOOR,
) -> DiagonalSystem:
    """Peel one peripheral elementary overlap, halving ``eps`` until the result checks out.

    A trial is accepted when every new node avoids the drilled and punctured
    orbits and the orbits of its neighbours, the PL pair checks report no
    more failures than before, and the pair loses exactly one bookkeeping node.

    Raises:
        EpsilonUnderflow: if no ``eps`` down to ``floor`` is accepted.
    """
    os = system.os
    lifts = system.materialize(window, N, point_budget)
    plan = plan_peel(lifts, ov, os.same_orbit)
    before_pairs = _pair_violations(system, window, N, punctures, point_budget)
    before_nodes = len(bookkeeping_nodes(ov.lower, ov.upper, os.same_orbit))

    def blocked(p: Point) -> bool:
        return system.C.contains(os, p) or (punctures is not None and punctures.contains(os, p))

    def trial(e: Fraction) -> DiagonalSystem:
        new_slope = plan.new_slope(e)
        current = system
        added: list[tuple[PLArc, Point]] = []
        for d in plan.family:
            here = current.entries[d.orbit_id].arc.mapped(os, d.deck)
            arc, b = reroute(here, plan.start, plan.toward, plan.slope, new_slope)
            added.append((arc, b))
            current = current.replace(d.orbit_id, arc.mapped(os, d.deck.inverse()))
        for arc, b in added:
            i = arc.nodes.index(b)
            if blocked(b) or os.same_orbit(b, arc.nodes[i - 1]) or os.same_orbit(b, arc.nodes[i + 1]):
                raise ScaleRejected(f"new node {point_to_float(b)} is not generic")
        if _pair_violations(current, window, N, punctures, point_budget) > before_pairs:
            raise ScaleRejected("peel broke a PL pair check")
        after = len(bookkeeping_nodes(current.lift(ov.lower.rect), current.lift(ov.upper.rect), os.same_orbit))
        if after != before_nodes - 1:
            raise ScaleRejected(f"bookkeeping nodes went from {before_nodes} to {after}")
        return current

    peeled = shrink_until_accepted(trial, eps, floor, EpsilonUnderflow, "peel")
    logger.debug(
        "Peeled %s over %s: %d diagonals rerouted (%s family)",
        ov.upper.orbit_id, ov.lower.orbit_id, len(plan.family), "upper" if plan.upper else "lower",
    )
    return peeled


def peel_to_fixpoint(
    system: DiagonalSystem,
    window: Window,
    N: Optional[int] = None,
    punctures: Optional[PointOrbitSet] = None,
    point_budget: Optional[int] = None,
    eps: Fraction = PEEL_EPS_START,
    max_steps: int = PEEL_MAX_STEPS,
    floor: Fraction = PEEL_EPS_FLOOR,
) -> tuple[DiagonalSystem, list[int]]:
    """Peel until no overlap is left; returns the system and the progress history.

    Raises:
        InvariantBreach: if overlaps remain after ``max_steps`` peels.
    """
    history = [progress_measure(system, window, N, point_budget)]
    for _ in range(max_steps):
        try:
            ov = find_peripheral_elementary(system, window, N, point_budget)
        except NoOverlap:
            logger.info("Peel settled after %d steps", len(history) - 1)
            return system, history
        system = peel(system, ov, eps, window, N, punctures, point_budget, floor)
        progress = progress_measure(system, window, N, point_budget)
        if progress >= history[-1]:
            logger.warning("Peel progress measure did not drop: %d -> %d", history[-1], progress)
        history.append(progress)
    raise InvariantBreach(f"overlaps remain after {max_steps} peels")
