"""Piecewise linear arcs in eigen coordinates and their exact intersections.

Nodes are stored west to east. Every segment has nonzero extent in both
coordinates, so an arc is the graph of a strictly monotone PL function of
``s``; a positive arc rises to the east and a negative arc falls.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence

from core.errors import InvalidInputError
from exactfield.quadnum import QuadNum
from orbitspace.normal_form import apply_lattice_map
from orbitspace.space import LatticeMap, OrbitSpace, Point, point_from_json, point_to_float, point_to_json


class NotTransverse(InvalidInputError):
    """Raised when nodes do not describe an arc transverse to both foliations."""


def slope_between(a: Point, b: Point) -> QuadNum:
    return (b[1] - a[1]) / (b[0] - a[0])


@dataclass(frozen=True)
class PLArc:
    nodes: tuple[Point, ...]

    def __post_init__(self) -> None:
        if len(self.nodes) < 2:
            raise NotTransverse("a PL arc needs at least two nodes")
        signs: set[int] = set()
        for a, b in self.segments():
            if (b[0] - a[0]).sign() <= 0:
                raise NotTransverse(f"nodes {point_to_float(a)} -> {point_to_float(b)} do not run west to east")
            du = b[1] - a[1]
            if not du:
                raise NotTransverse(f"segment at u={float(a[1]):.6g} is tangent to an unstable leaf")
            signs.add(du.sign())
        if len(signs) != 1:
            raise NotTransverse("segment slopes change sign along the arc")

    @classmethod
    def from_points(cls, points: Sequence[Point]) -> "PLArc":
        """Arc through ``points`` in west-to-east order; repeated points collapse."""
        ordered = sorted(set(points), key=lambda p: p[0])
        return cls(tuple(ordered))

    def with_nodes(self, nodes: Sequence[Point]) -> "PLArc":
        return PLArc.from_points(nodes)

    # -- shape -----------------------------------------------------------

    @property
    def west(self) -> Point:
        return self.nodes[0]

    @property
    def east(self) -> Point:
        return self.nodes[-1]

    @property
    def endpoints(self) -> tuple[Point, Point]:
        return (self.nodes[0], self.nodes[-1])

    @property
    def sign(self) -> int:
        return (self.nodes[1][1] - self.nodes[0][1]).sign()

    def segments(self) -> Iterator[tuple[Point, Point]]:
        return zip(self.nodes, self.nodes[1:])

    def slopes(self) -> list[QuadNum]:
        return [slope_between(a, b) for a, b in self.segments()]

    def turn_flags(self) -> list[bool]:
        """One flag per interior node: True where the slope changes."""
        sl = self.slopes()
        return [sl[i] != sl[i + 1] for i in range(len(sl) - 1)]

    def turns(self) -> list[Point]:
        return [n for n, flag in zip(self.nodes[1:-1], self.turn_flags()) if flag]

    def min_abs_slope(self) -> QuadNum:
        return min(abs(m) for m in self.slopes())

    def max_abs_slope(self) -> QuadNum:
        return max(abs(m) for m in self.slopes())

    def is_convex(self) -> bool:
        """Slopes strictly monotone across the turns (collinear nodes allowed)."""
        merged: list[QuadNum] = []
        for m in self.slopes():
            if not merged or merged[-1] != m:
                merged.append(m)
        if len(merged) < 3:
            return True
        rising = all(x < y for x, y in zip(merged, merged[1:]))
        falling = all(x > y for x, y in zip(merged, merged[1:]))
        return rising or falling

    # -- evaluation ------------------------------------------------------

    def segment_index(self, s: QuadNum) -> int:
        """Index of the segment over ``s``; a node belongs to the segment east of it."""
        if s < self.west[0] or s > self.east[0]:
            raise InvalidInputError(f"s={float(s):.6g} lies outside the arc")
        keys = [n[0] for n in self.nodes]
        i = bisect.bisect_right(keys, s) - 1
        return min(i, len(self.nodes) - 2)

    def value_at(self, s: QuadNum) -> QuadNum:
        i = self.segment_index(s)
        a, b = self.nodes[i], self.nodes[i + 1]
        return a[1] + (s - a[0]) * slope_between(a, b)

    def contains(self, p: Point) -> bool:
        if p[0] < self.west[0] or p[0] > self.east[0]:
            return False
        return self.value_at(p[0]) == p[1]

    def contains_interior(self, p: Point) -> bool:
        return p != self.west and p != self.east and self.contains(p)

    def is_node(self, p: Point) -> bool:
        return p in self.nodes

    def slope_west_of(self, p: Point) -> Optional[QuadNum]:
        """Slope of the segment arriving at ``p`` from the west, or None at the west end."""
        if p[0] <= self.west[0]:
            return None
        keys = [n[0] for n in self.nodes]
        i = bisect.bisect_left(keys, p[0]) - 1
        return slope_between(self.nodes[i], self.nodes[i + 1])

    def slope_east_of(self, p: Point) -> Optional[QuadNum]:
        if p[0] >= self.east[0]:
            return None
        return slope_between(*self.nodes[self.segment_index(p[0]):][:2])

    # -- editing ---------------------------------------------------------

    def insert_node(self, p: Point) -> "PLArc":
        if not self.contains(p):
            raise InvalidInputError(f"point {point_to_float(p)} is not on the arc")
        if self.is_node(p):
            return self
        return PLArc.from_points(self.nodes + (p,))

    def point_on_segment(self, i: int, t: Fraction) -> Point:
        a, b = self.nodes[i], self.nodes[i + 1]
        return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)

    def mapped(self, os: OrbitSpace, g: LatticeMap) -> "PLArc":
        return self.with_nodes([apply_lattice_map(os, g, n) for n in self.nodes])

    # -- output ----------------------------------------------------------

    def float_nodes(self) -> list[tuple[float, float]]:
        return [point_to_float(n) for n in self.nodes]

    def length(self) -> float:
        pts = self.float_nodes()
        return sum(((b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2) ** 0.5 for a, b in zip(pts, pts[1:]))

    def to_dict(self) -> dict[str, Any]:
        return {"nodes": [point_to_json(n) for n in self.nodes]}

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "PLArc":
        raw = payload.get("nodes")
        if not isinstance(raw, list):
            raise InvalidInputError("PL arc payload needs a node list")
        return cls.from_points([point_from_json(n) for n in raw])


# ---------------------------------------------------------------------------
# Intersections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    """A connected piece of an intersection: a point when ``lo == hi``."""

    lo: Point
    hi: Point

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def to_dict(self) -> dict[str, Any]:
        return {"lo": point_to_json(self.lo), "hi": point_to_json(self.hi), "point": self.is_point}


def arc_intersection(a: PLArc, b: PLArc) -> list[Component]:
    """Exact intersection of two closed arcs, west to east.

    Over the common ``s``-range both arcs are linear between consecutive
    breakpoints, so each subinterval meets in nothing, one point, or all of it.
    """
    lo, hi = max(a.west[0], b.west[0]), min(a.east[0], b.east[0])
    if lo > hi:
        return []
    cuts = sorted({lo, hi} | {n[0] for n in a.nodes + b.nodes if lo < n[0] < hi})

    def gap(t: QuadNum) -> QuadNum:
        return a.value_at(t) - b.value_at(t)

    pieces: list[tuple[QuadNum, QuadNum]] = []
    if len(cuts) == 1 and not gap(lo):
        pieces.append((lo, lo))
    for t0, t1 in zip(cuts, cuts[1:]):
        d0, d1 = gap(t0), gap(t1)
        if not d0 and not d1:
            pieces.append((t0, t1))
        elif not d0:
            pieces.append((t0, t0))
        elif not d1:
            pieces.append((t1, t1))
        elif d0.sign() != d1.sign():
            t = t0 + d0 * (t1 - t0) / (d0 - d1)
            pieces.append((t, t))

    merged: list[list[QuadNum]] = []
    for t0, t1 in sorted(pieces):
        if merged and t0 <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], t1)
        else:
            merged.append([t0, t1])
    return [Component((t0, a.value_at(t0)), (t1, a.value_at(t1))) for t0, t1 in merged]


def interior_overlap(a: PLArc, b: PLArc) -> list[Component]:
    """Components of ``int(a) ∩ int(b)``; single points at an endpoint drop out."""
    ends = {a.west, a.east, b.west, b.east}
    return [c for c in arc_intersection(a, b) if not (c.is_point and c.lo in ends)]
