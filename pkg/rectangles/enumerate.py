"""Edge-rectangle enumeration and open-strip searches over the lift set.

Every search here is exact. Searches that may need points outside the region
scanned so far raise ``WindowExhausted`` and are retried by tenacity with the
scanned extent multiplied by lambda on each attempt.
"""

from __future__ import annotations

import logging
from typing import Callable, Optional, Sequence

from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from exactfield.quadnum import QuadNum
from orbitspace.config import WIDEN_ATTEMPTS
from orbitspace.points import PointOrbitSet, enumerate_lifts
from orbitspace.space import OrbitSpace, Point, Window
from rectangles.models import EdgeRect, Rect, WindowExhausted

logger = logging.getLogger(__name__)


def widening(attempts: int = WIDEN_ATTEMPTS) -> Retrying:
    """Retry controller for searches that signal ``WindowExhausted``."""
    return Retrying(
        retry=retry_if_exception_type(WindowExhausted),
        stop=stop_after_attempt(attempts),
        reraise=True,
    )


def widen_until_found(
    os: OrbitSpace,
    start: QuadNum,
    scan: Callable[[QuadNum], Point],
    attempts: int = WIDEN_ATTEMPTS,
) -> Point:
    """Call ``scan(extent)`` with ``extent = start * lam**(n-1)`` until it succeeds."""
    for attempt in widening(attempts):
        with attempt:
            n = attempt.retry_state.attempt_number
            extent = start * os.lam ** (n - 1)
            if n > 1:
                logger.debug("Widening search extent to %.6g (attempt %d)", float(extent), n)
            return scan(extent)
    raise WindowExhausted("search gave up without an attempt")  # pragma: no cover


# ---------------------------------------------------------------------------
# Point queries
# ---------------------------------------------------------------------------


def points_in_rect(
    os: OrbitSpace,
    C: PointOrbitSet,
    r: Rect,
    point_budget: Optional[int] = None,
) -> list[Point]:
    """Lifts in the closed rectangle ``r``."""
    return enumerate_lifts(os, C, Window(r.s_lo, r.s_hi, r.u_lo, r.u_hi), point_budget)


def interior_points(
    os: OrbitSpace,
    C: PointOrbitSet,
    r: Rect,
    point_budget: Optional[int] = None,
) -> list[Point]:
    return [p for p in points_in_rect(os, C, r, point_budget) if r.contains_open(p)]


def is_edge_rect(os: OrbitSpace, C: PointOrbitSet, e: EdgeRect) -> bool:
    """Independent re-check: both corners are lifts and the interior is empty."""
    corners_ok = all(C.contains(os, c) for c in e.corners)
    return corners_ok and not interior_points(os, C, e.rect)


def _strip_scan_u(
    os: OrbitSpace,
    C: PointOrbitSet,
    s_range: tuple[QuadNum, QuadNum],
    u0: QuadNum,
    upward: bool,
    point_budget: Optional[int],
) -> Callable[[QuadNum], Point]:
    s_lo, s_hi = s_range

    def scan(extent: QuadNum) -> Point:
        w = Window(s_lo, s_hi, u0, u0 + extent) if upward else Window(s_lo, s_hi, u0 - extent, u0)
        found = [
            p for p in enumerate_lifts(os, C, w, point_budget)
            if s_lo < p[0] < s_hi and (p[1] > u0 if upward else p[1] < u0)
        ]
        if not found:
            raise WindowExhausted(f"no lift within {float(extent):.6g} of the strip end")
        return min(found, key=lambda p: p[1]) if upward else max(found, key=lambda p: p[1])

    return scan


def _strip_scan_s(
    os: OrbitSpace,
    C: PointOrbitSet,
    u_range: tuple[QuadNum, QuadNum],
    s0: QuadNum,
    rightward: bool,
    point_budget: Optional[int],
) -> Callable[[QuadNum], Point]:
    u_lo, u_hi = u_range

    def scan(extent: QuadNum) -> Point:
        w = Window(s0, s0 + extent, u_lo, u_hi) if rightward else Window(s0 - extent, s0, u_lo, u_hi)
        found = [
            p for p in enumerate_lifts(os, C, w, point_budget)
            if u_lo < p[1] < u_hi and (p[0] > s0 if rightward else p[0] < s0)
        ]
        if not found:
            raise WindowExhausted(f"no lift within {float(extent):.6g} of the strip end")
        return min(found) if rightward else max(found)

    return scan


def _start_extent(os: OrbitSpace, width: QuadNum) -> QuadNum:
    """Initial search depth for a strip of the given width."""
    one = os.q(1)
    return one / width if width < one else one


def first_above(
    os: OrbitSpace,
    C: PointOrbitSet,
    s_range: tuple[QuadNum, QuadNum],
    u0: QuadNum,
    point_budget: Optional[int] = None,
) -> Point:
    """Lowest lift with ``s`` in the open strip and ``u > u0``."""
    scan = _strip_scan_u(os, C, s_range, u0, True, point_budget)
    return widen_until_found(os, _start_extent(os, s_range[1] - s_range[0]), scan)


def first_below(
    os: OrbitSpace,
    C: PointOrbitSet,
    s_range: tuple[QuadNum, QuadNum],
    u0: QuadNum,
    point_budget: Optional[int] = None,
) -> Point:
    """Highest lift with ``s`` in the open strip and ``u < u0``."""
    scan = _strip_scan_u(os, C, s_range, u0, False, point_budget)
    return widen_until_found(os, _start_extent(os, s_range[1] - s_range[0]), scan)


def first_right(
    os: OrbitSpace,
    C: PointOrbitSet,
    u_range: tuple[QuadNum, QuadNum],
    s0: QuadNum,
    point_budget: Optional[int] = None,
) -> Point:
    """Westernmost lift with ``u`` in the open strip and ``s > s0``."""
    scan = _strip_scan_s(os, C, u_range, s0, True, point_budget)
    return widen_until_found(os, _start_extent(os, u_range[1] - u_range[0]), scan)


def first_left(
    os: OrbitSpace,
    C: PointOrbitSet,
    u_range: tuple[QuadNum, QuadNum],
    s0: QuadNum,
    point_budget: Optional[int] = None,
) -> Point:
    """Easternmost lift with ``u`` in the open strip and ``s < s0``."""
    scan = _strip_scan_s(os, C, u_range, s0, False, point_budget)
    return widen_until_found(os, _start_extent(os, u_range[1] - u_range[0]), scan)


# ---------------------------------------------------------------------------
# Edge rectangles in a window
# ---------------------------------------------------------------------------


def edge_rects_among(points: Sequence[Point]) -> list[EdgeRect]:
    """All edge rectangles spanned by pairs of ``points`` with no point inside.

    ``points`` must be every lift in a convex region; rectangles spanned by two
    of them then lie in that region, so emptiness is decided by ``points`` alone.
    For each west corner the sweep runs east in ``s`` keeping the running
    minimum of ``u`` above it and the running maximum below it.
    """
    pts = sorted(points)
    out: list[EdgeRect] = []
    for i, p in enumerate(pts):
        lowest_above: Optional[QuadNum] = None
        highest_below: Optional[QuadNum] = None
        for q in pts[i + 1:]:
            if q[1] > p[1]:
                if lowest_above is None or q[1] < lowest_above:
                    out.append(EdgeRect.from_corners(p, q))
                    lowest_above = q[1]
            elif q[1] < p[1]:
                if highest_below is None or q[1] > highest_below:
                    out.append(EdgeRect.from_corners(p, q))
                    highest_below = q[1]
    return out


def enumerate_edge_rects(
    os: OrbitSpace,
    C: PointOrbitSet,
    w: Window,
    point_budget: Optional[int] = None,
) -> list[EdgeRect]:
    """Edge rectangles with both corners in ``w``, ordered by (west corner, east corner).

    Raises:
        WindowTooLarge: if ``w`` holds more lifts than the point budget.
    """
    points = enumerate_lifts(os, C, w, point_budget)
    rects = edge_rects_among(points)
    rects.sort(key=lambda e: e.corners)
    logger.info("Enumerated %d edge rectangles from %d lifts", len(rects), len(points))
    return rects
