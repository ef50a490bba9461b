"""Overlaps between same-color diagonals and their bookkeeping.

An overlap is a shared segment of two same-color diagonals ``R1 < R2``.
Segments are cut at the nodes of either diagonal, so on a system meeting
the node goals every diagonal through a segment sees the same cut.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Any, Callable, Optional, Sequence

from core.errors import InvariantBreach, VerificationFailure
from diagonals.arcs import Component, PLArc, interior_overlap, slope_between
from diagonals.system import DiagonalLift, DiagonalSystem
from diagonals.verify import same_color_pairs
from orbitspace.space import Point, Window, point_to_json
from rectangles.order import lies_above

logger = logging.getLogger(__name__)

OrbitTest = Callable[[Point, Point], bool]
PointTest = Callable[[Point], bool]


class NoOverlap(VerificationFailure):
    """Raised when an overlap is asked for and none is present."""


@dataclass(frozen=True)
class Overlap:
    """``upper`` overlapping over ``lower`` along the segment ``subarc``.

    ``end`` is the endpoint of the intersection the segment contains, when
    that endpoint is not a lift of the drilled orbits.
    """

    lower: DiagonalLift
    upper: DiagonalLift
    subarc: tuple[Point, Point]
    peripheral: bool
    elementary: bool
    end: Optional[Point] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "lower": self.lower.orbit_id,
            "upper": self.upper.orbit_id,
            "pair": [self.lower.rect.to_dict(), self.upper.rect.to_dict()],
            "subarc": [point_to_json(p) for p in self.subarc],
            "peripheral": self.peripheral,
            "elementary": self.elementary,
            "end": point_to_json(self.end) if self.end is not None else None,
        }


def contains_segment(arc: PLArc, a: Point, b: Point) -> bool:
    """True when the straight segment ``ab`` lies on ``arc``."""
    if not (arc.contains(a) and arc.contains(b)):
        return False
    m = slope_between(a, b)
    return all(n[1] - a[1] == m * (n[0] - a[0]) for n in arc.nodes if a[0] < n[0] < b[0])


def component_segments(d1: PLArc, d2: PLArc, comp: Component) -> list[tuple[Point, Point]]:
    """The nondegenerate ``comp`` cut at the nodes of both arcs, west to east."""
    cuts = {comp.lo[0], comp.hi[0]}
    cuts |= {n[0] for n in d1.nodes + d2.nodes if comp.lo[0] < n[0] < comp.hi[0]}
    pts = [(s, d1.value_at(s)) for s in sorted(cuts)]
    return list(zip(pts, pts[1:]))


def _factors(lower: DiagonalLift, middle: DiagonalLift, upper: DiagonalLift, seg: tuple[Point, Point]) -> bool:
    return (
        middle.color == lower.color
        and lies_above(middle.rect, lower.rect)
        and lies_above(upper.rect, middle.rect)
        and contains_segment(middle.arc, *seg)
    )


def overlaps_among(lifts: Sequence[DiagonalLift], in_C: PointTest) -> list[Overlap]:
    """Every overlap between the given lifts with its flags set."""
    raw: list[tuple[DiagonalLift, DiagonalLift, tuple[Point, Point], Optional[Point]]] = []
    for lower, upper in same_color_pairs(lifts):
        for comp in interior_overlap(lower.arc, upper.arc):
            if comp.is_point:
                continue
            ends = [p for p in (comp.lo, comp.hi) if not in_C(p)]
            for seg in component_segments(lower.arc, upper.arc, comp):
                raw.append((lower, upper, seg, next((p for p in ends if p in seg), None)))
    return [
        Overlap(
            lower,
            upper,
            seg,
            peripheral=end is not None,
            elementary=not any(_factors(lower, m, upper, seg) for m in lifts),
            end=end,
        )
        for lower, upper, seg, end in raw
    ]


def find_overlaps(
    system: DiagonalSystem,
    window: Window,
    N: Optional[int] = None,
    point_budget: Optional[int] = None,
) -> list[Overlap]:
    lifts = system.materialize(window, N, point_budget)
    return overlaps_among(lifts, lambda p: system.C.contains(system.os, p))


def _runs(segs: list[tuple[Point, Point]]) -> list[list[tuple[Point, Point]]]:
    runs: list[list[tuple[Point, Point]]] = []
    for seg in sorted(segs, key=lambda s: s[0][0]):
        if runs and runs[-1][-1][1] == seg[0]:
            runs[-1].append(seg)
        else:
            runs.append([seg])
    return runs


def peripheral_elementary_among(lifts: Sequence[DiagonalLift], in_C: PointTest) -> Overlap:
    """A peripheral elementary overlap, by the outermost-then-descend search.

    The lower diagonal is held fixed; an outermost overlapped segment of it
    is taken, and among the diagonals overlapping it there the lowest one
    is returned.

    Raises:
        NoOverlap: if the lifts have no overlap at all.
    """
    found = overlaps_among(lifts, in_C)
    if not found:
        raise NoOverlap("the diagonal system has no overlaps")
    lowers: list[DiagonalLift] = []
    for ov in found:
        if all(ov.lower.rect != q.rect for q in lowers):
            lowers.append(ov.lower)
    for q1 in lowers:
        mine = [ov for ov in found if ov.lower.rect == q1.rect]
        for run in _runs(list({ov.subarc for ov in mine})):
            for x, rho in ((run[0][0], run[0]), (run[-1][1], run[-1])):
                if in_C(x):
                    continue
                candidates = [ov for ov in mine if ov.subarc == rho]
                choice = candidates[0]
                while True:
                    below = [ov for ov in candidates if lies_above(choice.upper.rect, ov.upper.rect)]
                    if not below:
                        break
                    choice = below[0]
                return replace(choice, peripheral=True, end=x)
    fallback = [ov for ov in found if ov.peripheral and ov.elementary]
    if fallback:
        return fallback[0]
    raise InvariantBreach(f"{len(found)} overlaps but none is peripheral and elementary")


def find_peripheral_elementary(
    system: DiagonalSystem,
    window: Window,
    N: Optional[int] = None,
    point_budget: Optional[int] = None,
) -> Overlap:
    """Raises NoOverlap on an overlap-free truncation."""
    lifts = system.materialize(window, N, point_budget)
    return peripheral_elementary_among(lifts, lambda p: system.C.contains(system.os, p))


# ---------------------------------------------------------------------------
# Bookkeeping
# ---------------------------------------------------------------------------


def bookkeeping_nodes(d1: DiagonalLift, d2: DiagonalLift, same_orbit: OrbitTest) -> list[Point]:
    """Bookkeeping nodes of ``d1 ∩ d2``, west to east.

    These are the ends and turns of the shared subarc, with existing nodes
    added where two neighbours would otherwise share an orbit. A pair
    meeting in one interior point has that point as its only node.
    """
    comps = interior_overlap(d1.arc, d2.arc)
    wide = [c for c in comps if not c.is_point]
    if not wide:
        return [comps[0].lo] if comps else []
    r = wide[0]
    inside = sorted(
        {n for n in d1.arc.nodes + d2.arc.nodes if r.lo[0] < n[0] < r.hi[0]},
        key=lambda p: p[0],
    )
    turns = [n for n in inside if d1.arc.slope_west_of(n) != d1.arc.slope_east_of(n)]
    required = [r.lo, *turns, r.hi]
    out = [required[0]]
    for nxt in required[1:]:
        prev = out[-1]
        if same_orbit(prev, nxt):
            between = [
                n for n in inside
                if prev[0] < n[0] < nxt[0] and not same_orbit(n, prev) and not same_orbit(n, nxt)
            ]
            if between:
                out.append(between[0])
        out.append(nxt)
    return out


def overlapping_pairs(lifts: Sequence[DiagonalLift]) -> list[tuple[DiagonalLift, DiagonalLift]]:
    """Same-color pairs whose interiors share a nondegenerate subarc."""
    return [
        (lower, upper)
        for lower, upper in same_color_pairs(lifts)
        if any(not c.is_point for c in interior_overlap(lower.arc, upper.arc))
    ]


def progress_of(lifts: Sequence[DiagonalLift], same_orbit: OrbitTest) -> int:
    return sum(len(bookkeeping_nodes(lo, up, same_orbit)) for lo, up in overlapping_pairs(lifts))


def progress_measure(
    system: DiagonalSystem,
    window: Window,
    N: Optional[int] = None,
    point_budget: Optional[int] = None,
) -> int:
    """Bookkeeping nodes summed over every overlapping pair in the truncation."""
    return progress_of(system.materialize(window, N, point_budget), system.os.same_orbit)
