"""Tetrahedron rectangles: growth from an edge rectangle and face adjacency."""

from __future__ import annotations

import logging
from typing import Optional

from core.errors import InvariantBreach
from orbitspace.points import PointOrbitSet, enumerate_lifts
from orbitspace.space import OrbitSpace, Point, Window
from rectangles.enumerate import (
    enumerate_edge_rects,
    first_above,
    first_below,
    first_left,
    first_right,
    points_in_rect,
)
from rectangles.models import NORTH, SOUTH, EdgeRect, TetraRect

logger = logging.getLogger(__name__)


def tetra_above(
    os: OrbitSpace,
    C: PointOrbitSet,
    e: EdgeRect,
    point_budget: Optional[int] = None,
) -> TetraRect:
    """The tetrahedron rectangle whose bottom edge subrectangle is ``e``."""
    r = e.rect
    strip = (r.s_lo, r.s_hi)
    north = first_above(os, C, strip, r.u_hi, point_budget)
    south = first_below(os, C, strip, r.u_lo, point_budget)
    return TetraRect.from_points((north, e.east, south, e.west))


def tetra_below(
    os: OrbitSpace,
    C: PointOrbitSet,
    e: EdgeRect,
    point_budget: Optional[int] = None,
) -> TetraRect:
    """The tetrahedron rectangle whose top edge subrectangle is ``e``."""
    r = e.rect
    strip = (r.u_lo, r.u_hi)
    west = first_left(os, C, strip, r.s_lo, point_budget)
    east = first_right(os, C, strip, r.s_hi, point_budget)
    return TetraRect.from_points((e.upper, east, e.lower, west))


def face_corner(T: TetraRect, i: int) -> Point:
    """The one point of face ``i`` sitting at a corner of the face rectangle."""
    f = T.face_rect(i)
    at_corner = [
        p for p in T.face_points(i)
        if p[0] in (f.s_lo, f.s_hi) and p[1] in (f.u_lo, f.u_hi)
    ]
    if len(at_corner) != 1:
        raise InvariantBreach(f"face {i} of {T.to_dict()} has {len(at_corner)} corner points")
    return at_corner[0]


def adjacent_tetra(
    os: OrbitSpace,
    C: PointOrbitSet,
    T: TetraRect,
    i: int,
    point_budget: Optional[int] = None,
) -> TetraRect:
    """The tetrahedron rectangle on the other side of face ``i`` of ``T``.

    ``T`` grows the face rectangle across the side through its corner point in
    one direction; the neighbour grows it across the other side through that
    corner.
    """
    f = T.face_rect(i)
    c = face_corner(T, i)
    pts = list(T.face_points(i))
    if i in (NORTH, SOUTH):
        if c[0] == f.s_lo:
            new = first_left(os, C, (f.u_lo, f.u_hi), f.s_lo, point_budget)
        else:
            new = first_right(os, C, (f.u_lo, f.u_hi), f.s_hi, point_budget)
    else:
        if c[1] == f.u_hi:
            new = first_above(os, C, (f.s_lo, f.s_hi), f.u_hi, point_budget)
        else:
            new = first_below(os, C, (f.s_lo, f.s_hi), f.u_lo, point_budget)
    return TetraRect.from_points(pts + [new])


def verify_tetra_rect(
    os: OrbitSpace,
    C: PointOrbitSet,
    T: TetraRect,
    point_budget: Optional[int] = None,
) -> list[str]:
    """Problems with ``T`` as a tetrahedron rectangle; empty when valid."""
    problems: list[str] = []
    if not T.sides_are_marked():
        problems.append("side points are not in the open interiors of their sides")
    inside = points_in_rect(os, C, T.rect, point_budget)
    marked = set(T.points)
    for p in inside:
        if T.rect.contains_open(p):
            problems.append(f"lift in the interior at {p!r}")
        elif p not in marked:
            problems.append(f"unmarked lift on the boundary at {p!r}")
    for p in T.points:
        if not C.contains(os, p):
            problems.append(f"side point {p!r} is not a lift")
    edges = T.edge_subrects()
    faces = T.face_subrects()
    if len(set(edges)) != 6 or len(set(faces)) != 4:
        problems.append(f"found {len(set(edges))} edge and {len(set(faces))} face subrectangles")
    return problems


def enumerate_tetra_rects(
    os: OrbitSpace,
    C: PointOrbitSet,
    w: Window,
    point_budget: Optional[int] = None,
) -> list[TetraRect]:
    """Tetrahedron rectangles with all four side points in ``w``.

    Each one is found from its bottom edge, an edge rectangle in ``w``. A side
    point that is not the first lift in ``w`` along its strip lies outside
    ``w``, so the growth is decided by the lifts of ``w`` alone.
    """
    points = enumerate_lifts(os, C, w, point_budget)
    out: list[TetraRect] = []
    for e in enumerate_edge_rects(os, C, w, point_budget):
        r = e.rect
        strip = [p for p in points if r.s_lo < p[0] < r.s_hi]
        above = [p for p in strip if p[1] > r.u_hi]
        below = [p for p in strip if p[1] < r.u_lo]
        if not above or not below:
            continue
        north = min(above, key=lambda p: p[1])
        south = max(below, key=lambda p: p[1])
        T = TetraRect.from_points((north, e.east, south, e.west))
        problems = verify_tetra_rect(os, C, T, point_budget)
        if problems:
            raise InvariantBreach(f"grown tetrahedron rectangle is invalid: {problems}")
        out.append(T)
    out.sort(key=lambda t: t.points)
    logger.info("Enumerated %d tetrahedron rectangles", len(out))
    return out
