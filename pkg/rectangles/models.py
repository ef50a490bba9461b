"""Rectangle models: plain, edge and tetrahedron rectangles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Optional

from core.errors import InvalidInputError, VerificationFailure
from exactfield.quadnum import QuadNum, qn_to_float
from orbitspace.normal_form import apply_lattice_map
from orbitspace.space import (
    DeckElement,
    LatticeMap,
    OrbitSpace,
    Point,
    point_from_json,
    point_to_json,
    transport,
)

RED = "red"
BLUE = "blue"
COLORS = (RED, BLUE)

NORTH, EAST, SOUTH, WEST = 0, 1, 2, 3
VERTEX_NAMES = ("N", "E", "S", "W")
TOP_EDGE = (NORTH, SOUTH)
BOTTOM_EDGE = (EAST, WEST)
EDGE_PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class DegenerateRect(InvalidInputError):
    """Raised when a rectangle has zero extent along an axis."""


class NotInC(InvalidInputError):
    """Raised when a staircase base is not a lift of the drilled orbit."""


class WindowExhausted(VerificationFailure):
    """Raised when a search needs points beyond the materialized region."""


class NoRecurrence(VerificationFailure):
    """Raised when the core-point iteration hits its cap without repeating."""


def other_color(color: str) -> str:
    return BLUE if color == RED else RED


@dataclass(frozen=True)
class Rect:
    """Axis-parallel rectangle ``[s_lo, s_hi] x [u_lo, u_hi]`` with positive extents."""

    s_lo: QuadNum
    s_hi: QuadNum
    u_lo: QuadNum
    u_hi: QuadNum

    def __post_init__(self) -> None:
        if not (self.s_lo < self.s_hi and self.u_lo < self.u_hi):
            raise DegenerateRect(f"rectangle has empty interior: {self.to_floats()}")

    @classmethod
    def spanned(cls, p: Point, q: Point) -> "Rect":
        """Smallest rectangle with ``p`` and ``q`` as corners."""
        return cls(min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]))

    @classmethod
    def bounding(cls, pts: Iterable[Point]) -> "Rect":
        pts = list(pts)
        return cls(
            min(p[0] for p in pts),
            max(p[0] for p in pts),
            min(p[1] for p in pts),
            max(p[1] for p in pts),
        )

    @property
    def width(self) -> QuadNum:
        return self.s_hi - self.s_lo

    @property
    def height(self) -> QuadNum:
        return self.u_hi - self.u_lo

    def center(self) -> Point:
        return ((self.s_lo + self.s_hi) / 2, (self.u_lo + self.u_hi) / 2)

    def corners(self) -> tuple[Point, Point, Point, Point]:
        """Corners as (bottom-left, bottom-right, top-right, top-left)."""
        return (
            (self.s_lo, self.u_lo),
            (self.s_hi, self.u_lo),
            (self.s_hi, self.u_hi),
            (self.s_lo, self.u_hi),
        )

    def contains_open(self, p: Point) -> bool:
        return self.s_lo < p[0] < self.s_hi and self.u_lo < p[1] < self.u_hi

    def contains_closed(self, p: Point) -> bool:
        return self.s_lo <= p[0] <= self.s_hi and self.u_lo <= p[1] <= self.u_hi

    def contains_rect(self, other: "Rect") -> bool:
        return (
            self.s_lo <= other.s_lo
            and other.s_hi <= self.s_hi
            and self.u_lo <= other.u_lo
            and other.u_hi <= self.u_hi
        )

    def intersection(self, other: "Rect") -> Optional["Rect"]:
        """Overlap with positive area, or ``None``."""
        s_lo, s_hi = max(self.s_lo, other.s_lo), min(self.s_hi, other.s_hi)
        u_lo, u_hi = max(self.u_lo, other.u_lo), min(self.u_hi, other.u_hi)
        if s_lo < s_hi and u_lo < u_hi:
            return Rect(s_lo, s_hi, u_lo, u_hi)
        return None

    def transported(self, g: DeckElement) -> "Rect":
        a = transport(g, (self.s_lo, self.u_lo))
        b = transport(g, (self.s_hi, self.u_hi))
        return Rect.spanned(a, b)

    def to_floats(self) -> tuple[float, float, float, float]:
        return (qn_to_float(self.s_lo), qn_to_float(self.s_hi), qn_to_float(self.u_lo), qn_to_float(self.u_hi))

    def to_dict(self) -> dict[str, Any]:
        return {
            "s": [self.s_lo.to_json(), self.s_hi.to_json()],
            "u": [self.u_lo.to_json(), self.u_hi.to_json()],
        }


@dataclass(frozen=True)
class EdgeRect:
    """Rectangle whose two opposite corners lie in the drilled lift set.

    ``corners`` is ordered west to east. The rectangle is red when the
    corners are bottom-left/top-right and blue otherwise.
    """

    rect: Rect
    corners: tuple[Point, Point]
    color: str

    @classmethod
    def from_corners(cls, p: Point, q: Point) -> "EdgeRect":
        west, east = (p, q) if p[0] < q[0] else (q, p)
        color = RED if west[1] < east[1] else BLUE
        return cls(Rect.spanned(west, east), (west, east), color)

    @property
    def west(self) -> Point:
        return self.corners[0]

    @property
    def east(self) -> Point:
        return self.corners[1]

    @property
    def lower(self) -> Point:
        return self.corners[0] if self.corners[0][1] < self.corners[1][1] else self.corners[1]

    @property
    def upper(self) -> Point:
        return self.corners[1] if self.corners[0][1] < self.corners[1][1] else self.corners[0]

    def other_corner(self, c: Point) -> Point:
        return self.corners[1] if c == self.corners[0] else self.corners[0]

    def has_corner(self, c: Point) -> bool:
        return c == self.corners[0] or c == self.corners[1]

    def transported(self, g: DeckElement) -> "EdgeRect":
        return EdgeRect.from_corners(transport(g, self.corners[0]), transport(g, self.corners[1]))

    def mapped(self, os: OrbitSpace, g: LatticeMap) -> "EdgeRect":
        """Image under a deck element given in lattice form."""
        return EdgeRect.from_corners(
            apply_lattice_map(os, g, self.corners[0]),
            apply_lattice_map(os, g, self.corners[1]),
        )

    def to_dict(self) -> dict[str, Any]:
        payload = self.rect.to_dict()
        payload["corners"] = [point_to_json(c) for c in self.corners]
        payload["color"] = self.color
        return payload

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "EdgeRect":
        corners = payload.get("corners")
        if not isinstance(corners, list) or len(corners) != 2:
            raise InvalidInputError("edge rectangle needs two corners")
        edge = cls.from_corners(point_from_json(corners[0]), point_from_json(corners[1]))
        if payload.get("color") not in (None, edge.color):
            raise InvalidInputError(f"edge rectangle color {payload.get('color')!r} contradicts its corners")
        return edge


@dataclass(frozen=True)
class TetraRect:
    """Rectangle with one marked point in the interior of each side.

    Vertices are indexed N, E, S, W = 0, 1, 2, 3. The top edge joins N and S,
    the bottom edge joins E and W.
    """

    rect: Rect
    north: Point
    east: Point
    south: Point
    west: Point

    @classmethod
    def from_points(cls, pts: Iterable[Point]) -> "TetraRect":
        pts = list(pts)
        rect = Rect.bounding(pts)
        by_side = {
            NORTH: [p for p in pts if p[1] == rect.u_hi],
            EAST: [p for p in pts if p[0] == rect.s_hi],
            SOUTH: [p for p in pts if p[1] == rect.u_lo],
            WEST: [p for p in pts if p[0] == rect.s_lo],
        }
        if len(pts) != 4 or any(len(v) != 1 for v in by_side.values()):
            raise InvalidInputError("tetrahedron rectangle needs exactly one point per side")
        return cls(rect, by_side[NORTH][0], by_side[EAST][0], by_side[SOUTH][0], by_side[WEST][0])

    @property
    def points(self) -> tuple[Point, Point, Point, Point]:
        return (self.north, self.east, self.south, self.west)

    def index_of(self, p: Point) -> int:
        return self.points.index(p)

    def edge(self, a: int, b: int) -> EdgeRect:
        return EdgeRect.from_corners(self.points[a], self.points[b])

    def top_edge(self) -> EdgeRect:
        return self.edge(*TOP_EDGE)

    def bottom_edge(self) -> EdgeRect:
        return self.edge(*BOTTOM_EDGE)

    def edge_subrects(self) -> list[EdgeRect]:
        return [self.edge(a, b) for a, b in EDGE_PAIRS]

    def face_points(self, i: int) -> tuple[Point, Point, Point]:
        """Points of the face omitting vertex ``i``."""
        pts = self.points
        return tuple(pts[j] for j in range(4) if j != i)  # type: ignore[return-value]

    def face_rect(self, i: int) -> Rect:
        return Rect.bounding(self.face_points(i))

    def face_subrects(self) -> list[Rect]:
        return [self.face_rect(i) for i in range(4)]

    def sides_are_marked(self) -> bool:
        """Each marked point lies in the open interior of its own side."""
        r = self.rect
        return (
            self.north[1] == r.u_hi and r.s_lo < self.north[0] < r.s_hi
            and self.south[1] == r.u_lo and r.s_lo < self.south[0] < r.s_hi
            and self.east[0] == r.s_hi and r.u_lo < self.east[1] < r.u_hi
            and self.west[0] == r.s_lo and r.u_lo < self.west[1] < r.u_hi
        )

    def transported(self, g: DeckElement) -> "TetraRect":
        return TetraRect.from_points(transport(g, p) for p in self.points)

    def mapped(self, os: OrbitSpace, g: LatticeMap) -> "TetraRect":
        return TetraRect.from_points(apply_lattice_map(os, g, p) for p in self.points)

    def to_dict(self) -> dict[str, Any]:
        payload = self.rect.to_dict()
        payload["points"] = {name: point_to_json(p) for name, p in zip(VERTEX_NAMES, self.points)}
        return payload
