"""Final position criteria on the diagonal lifts in a window.

For every pair ``R1 < R2`` of any colors:

* slope criterion: corner-sharing pairs have disjoint interiors; all other
  pairs meet in exactly one point where ``|slope(d1)| < |slope(d2)|`` on
  both flanks.
* crossing criterion: the same comparison made on canonical-lift heights,
  so the lift of ``d2`` passes over the lift of ``d1``.

Face embeddedness asks the three diagonals of every tetrahedron face to have
pairwise disjoint interiors.
"""

from __future__ import annotations

import logging
from typing import Any, Iterator, Literal, Optional, Sequence

from core.verification import CheckReport
from diagonals.arcs import Component, interior_overlap
from diagonals.system import DiagonalLift, DiagonalSystem, MissingDiagonal
from diagonals.verify import shares_corner
from orbitspace.space import Point, Window, point_to_json
from perturb.heights import flank_heights
from rectangles.models import TetraRect
from rectangles.order import lies_above

logger = logging.getLogger(__name__)

Colors = Literal["all", "same"]


def ordered_pairs(lifts: Sequence[DiagonalLift], colors: Colors = "all") -> Iterator[tuple[DiagonalLift, DiagonalLift]]:
    """``(lower, upper)`` for every pair with ``upper`` above ``lower``."""
    for a in lifts:
        for b in lifts:
            if colors == "same" and a.color != b.color:
                continue
            if lies_above(b.rect, a.rect):
                yield a, b


def _witness(lower: DiagonalLift, upper: DiagonalLift, **extra: Any) -> dict[str, Any]:
    return {"pair": [lower.rect.to_dict(), upper.rect.to_dict()], **extra}


def crossing_point(lower: DiagonalLift, upper: DiagonalLift) -> tuple[Optional[Point], list[Component]]:
    """The single transverse meeting point of the interiors, if that is how they meet."""
    comps = interior_overlap(lower.arc, upper.arc)
    if len(comps) == 1 and comps[0].is_point:
        return comps[0].lo, comps
    return None, comps


def flank_slopes(d: DiagonalLift, p: Point) -> tuple[Any, Any]:
    return d.arc.slope_west_of(p), d.arc.slope_east_of(p)


def slope_failure(lower: DiagonalLift, upper: DiagonalLift) -> Optional[tuple[str, dict[str, Any], str]]:
    """The slope-criterion violation of one ordered pair, or None."""
    if shares_corner(lower, upper):
        comps = interior_overlap(lower.arc, upper.arc)
        if comps:
            return "corner_pair_overlap", _witness(lower, upper, overlap=[c.to_dict() for c in comps]), ""
        return None
    p, comps = crossing_point(lower, upper)
    if p is None:
        return (
            "not_single_point",
            _witness(lower, upper, overlap=[c.to_dict() for c in comps]),
            f"{len(comps)} components",
        )
    lo, up = flank_slopes(lower, p), flank_slopes(upper, p)
    if all(abs(a) < abs(b) for a, b in zip(lo, up)):
        return None
    slopes = {
        "lower": [float(m) for m in lo],
        "upper": [float(m) for m in up],
    }
    return "slope_inequality", _witness(lower, upper, point=point_to_json(p), slopes=slopes), lower.color + "/" + upper.color


def check_slope_criterion(
    system: DiagonalSystem,
    window: Window,
    N: Optional[int] = None,
    point_budget: Optional[int] = None,
    colors: Colors = "all",
) -> CheckReport:
    report = CheckReport(name="slope_criterion", window=window.to_dict(), height_bound=N)
    lifts = system.materialize(window, N, point_budget)
    for lower, upper in ordered_pairs(lifts, colors):
        report.count()
        failure = slope_failure(lower, upper)
        if failure is not None:
            report.add(*failure)
    logger.info(
        "Slope criterion (%s colors): %d pairs, %d violations",
        colors, report.checked_pairs, len(report.violations),
    )
    return report


def check_crossing(
    system: DiagonalSystem,
    window: Window,
    N: Optional[int] = None,
    point_budget: Optional[int] = None,
) -> CheckReport:
    """Compare canonical-lift heights of every ordered pair at its crossing.

    Heights come from representative slopes and deck shifts, so the verdict
    does not change when the whole system is moved by a deck map.
    """
    report = CheckReport(name="crossing_criterion", window=window.to_dict(), height_bound=N)
    os = system.os
    lifts = system.materialize(window, N, point_budget)
    for lower, upper in ordered_pairs(lifts):
        report.count()
        if shares_corner(lower, upper):
            if interior_overlap(lower.arc, upper.arc):
                report.add("corner_pair_overlap", _witness(lower, upper))
            continue
        p, comps = crossing_point(lower, upper)
        if p is None:
            report.add("non_transverse", _witness(lower, upper, overlap=[c.to_dict() for c in comps]))
            continue
        below, above = flank_heights(os, lower, p), flank_heights(os, upper, p)
        for side, h1, h2 in zip(("west", "east"), below, above):
            if h1 is not None and h2 is not None and not h1 < h2:
                report.add(
                    "crossing_order",
                    _witness(lower, upper, point=point_to_json(p), side=side, heights=[h1.to_dict(), h2.to_dict()]),
                )
    logger.info("Crossing criterion: %d pairs, %d violations", report.checked_pairs, len(report.violations))
    return report


def check_face_embeddedness(system: DiagonalSystem, tetras: Sequence[TetraRect]) -> CheckReport:
    report = CheckReport(name="face_embeddedness")
    for T in tetras:
        for i in range(4):
            idx = [j for j in range(4) if j != i]
            try:
                lifts = [system.lift(T.edge(a, b)) for a, b in ((idx[0], idx[1]), (idx[0], idx[2]), (idx[1], idx[2]))]
            except MissingDiagonal as exc:
                report.add("missing_diagonal", {"tetra": T.to_dict(), "face": i}, str(exc))
                continue
            for x in range(3):
                for y in range(x + 1, 3):
                    report.count()
                    comps = interior_overlap(lifts[x].arc, lifts[y].arc)
                    if comps:
                        report.add(
                            "face_interiors_meet",
                            {
                                "tetra": T.to_dict(),
                                "face": i,
                                "edges": [lifts[x].rect.to_dict(), lifts[y].rect.to_dict()],
                                "overlap": [c.to_dict() for c in comps],
                            },
                        )
    logger.info("Face embeddedness: %d tetrahedra, %d violations", len(tetras), len(report.violations))
    return report
