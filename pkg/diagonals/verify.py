"""Exact checks of the PL goals on the diagonal lifts in a window.

For same-color lifts ``R1 < R2``: corner-sharing pairs must have disjoint
interiors; other pairs must overlap in one connected (possibly degenerate)
subarc ``r`` with ``|slope_r(d1)| < |slope_r(d2)|``. When the overlap starts
at both west ends only the east flanks are compared; otherwise all four
flanks must exist and both ends are compared. Node consistency, orbit
separation of adjacent nodes, endpoints and puncture avoidance are checked
alongside.
"""

from __future__ import annotations

import logging
from typing import Any, Iterator, Optional, Sequence

from core.verification import CheckReport
from diagonals.arcs import Component, PLArc, interior_overlap
from diagonals.system import DiagonalLift, DiagonalSystem
from orbitspace.points import PointOrbitSet, enumerate_lifts
from orbitspace.space import Point, Window, point_to_json
from rectangles.order import lies_above

logger = logging.getLogger(__name__)


def same_color_pairs(lifts: Sequence[DiagonalLift]) -> Iterator[tuple[DiagonalLift, DiagonalLift]]:
    """``(lower, upper)`` for every same-color pair with ``upper`` above ``lower``."""
    for a in lifts:
        for b in lifts:
            if a.color == b.color and lies_above(b.rect, a.rect):
                yield a, b


def shares_corner(a: DiagonalLift, b: DiagonalLift) -> bool:
    return any(b.rect.has_corner(c) for c in a.rect.corners)


def overlap_slope_ok(d1: PLArc, d2: PLArc, r: Component) -> tuple[bool, str]:
    """``|slope_r(d1)| < |slope_r(d2)|`` on the flanks of the overlap ``r``."""
    w1, w2 = d1.slope_west_of(r.lo), d2.slope_west_of(r.lo)
    e1, e2 = d1.slope_east_of(r.hi), d2.slope_east_of(r.hi)
    if w1 is None and w2 is None:
        if e1 is None or e2 is None:
            return False, "overlap covers a whole diagonal"
        return abs(e1) < abs(e2), "east flanks"
    if e1 is None and e2 is None:
        if w1 is None or w2 is None:
            return False, "overlap covers a whole diagonal"
        return abs(w1) < abs(w2), "west flanks"
    if w1 is None or w2 is None or e1 is None or e2 is None:
        return False, "one flank ends at an endpoint"
    return abs(w1) < abs(w2) and abs(e1) < abs(e2), "both flanks"


def _pair_witness(lower: DiagonalLift, upper: DiagonalLift, **extra: Any) -> dict[str, Any]:
    return {"pair": [lower.rect.to_dict(), upper.rect.to_dict()], **extra}


def pair_failure(lower: DiagonalLift, upper: DiagonalLift) -> Optional[tuple[str, dict[str, Any], str]]:
    """The PL-goal violation of one same-color pair, or None."""
    comps = interior_overlap(lower.arc, upper.arc)
    if shares_corner(lower, upper):
        if comps:
            return "corner_pair_overlap", _pair_witness(lower, upper, overlap=[c.to_dict() for c in comps]), ""
        return None
    if len(comps) != 1:
        return (
            "overlap_disconnected",
            _pair_witness(lower, upper, overlap=[c.to_dict() for c in comps]),
            f"{len(comps)} components",
        )
    ok, detail = overlap_slope_ok(lower.arc, upper.arc, comps[0])
    if not ok:
        return "slope_inequality", _pair_witness(lower, upper, overlap=comps[0].to_dict()), detail
    return None


def _node_consistency(report: CheckReport, lifts: Sequence[DiagonalLift]) -> None:
    for a in lifts:
        for b in lifts:
            if a.rect == b.rect or a.rect.rect.intersection(b.rect.rect) is None:
                continue
            for n in a.arc.nodes[1:-1]:
                if b.arc.contains_interior(n) and not b.arc.is_node(n):
                    report.add(
                        "node_consistency",
                        {"node": point_to_json(n), "of": a.orbit_id, "on": b.orbit_id},
                    )


def _interior_punctures(
    report: CheckReport,
    system: DiagonalSystem,
    lifts: Sequence[DiagonalLift],
    punctures: PointOrbitSet,
    point_budget: Optional[int],
) -> None:
    for d in lifts:
        r = d.rect.rect
        for p in enumerate_lifts(system.os, punctures, Window(r.s_lo, r.s_hi, r.u_lo, r.u_hi), point_budget):
            if d.arc.contains_interior(p):
                report.add("interior_puncture", {"orbit_id": d.orbit_id, "puncture": point_to_json(p)})


def verify_plo(
    system: DiagonalSystem,
    window: Window,
    N: Optional[int] = None,
    punctures: Optional[PointOrbitSet] = None,
    point_budget: Optional[int] = None,
) -> CheckReport:
    """Check the PL goals on every lift in ``window`` within height bound ``N``."""
    report = CheckReport(name="plo", window=window.to_dict(), height_bound=N)
    lifts = system.materialize(window, N, point_budget)
    for d in lifts:
        if d.arc.endpoints != d.rect.corners:
            report.add("diagonal_endpoints", {"orbit_id": d.orbit_id, "rect": d.rect.to_dict()})
    if punctures is not None and len(punctures):
        _interior_punctures(report, system, lifts, punctures, point_budget)
    for lower, upper in same_color_pairs(lifts):
        report.count()
        failure = pair_failure(lower, upper)
        if failure is not None:
            report.add(*failure)
    _node_consistency(report, lifts)
    for oid, arc in system.arcs():
        for a, b in arc.segments():
            if system.os.same_orbit(a, b):
                report.add("adjacent_orbit", {"orbit_id": oid, "nodes": [point_to_json(a), point_to_json(b)]})
    logger.info(
        "PLO verification: %d lifts, %d pairs, %d violations",
        len(lifts), report.checked_pairs, len(report.violations),
    )
    return report
