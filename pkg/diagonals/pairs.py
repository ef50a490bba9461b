"""Anchor subrectangles and the classification of intersecting pairs.

For same-color edge rectangles ``R1 < R2`` with anchors, each pair of
intersecting anchor subrectangles ``(R1', R2')`` is of type 0 (a side
overlaps a side), type I (the hooked arcs are disjoint) or type II (they
meet). The leaves through the sides of ``R2'`` cut the plane into nine cells,
and with ``R1'`` placed in them there are 81 configurations. Asking that both
be edge rectangles of one color with ``R1 < R2`` and that the subrectangles
meet leaves eight, four of each type. Each comes with the rectangles ``Q``
in which a buoy separates or tightens the two half-diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from core.errors import InvalidInputError, VerificationFailure
from exactfield.quadnum import QuadNum
from orbitspace.space import Point, point_to_json
from rectangles.models import EdgeRect, Rect
from rectangles.order import lies_above

PairType = Literal["0", "I-1", "I-2", "I-3", "I-4", "II-1", "II-2", "II-3", "II-4"]
PAIR_TYPES: tuple[str, ...] = ("0", "I-1", "I-2", "I-3", "I-4", "II-1", "II-2", "II-3", "II-4")

Segment = tuple[Point, Point]


class EmptyIntersection(VerificationFailure):
    """Raised when the buoy rectangle of a pair comes out empty."""


@dataclass(frozen=True)
class AnchorRect:
    """``R(corner, anchor)`` inside its edge rectangle; ``side`` 0 is west, 1 east."""

    owner: EdgeRect
    side: int
    anchor: Point

    @property
    def corner(self) -> Point:
        return self.owner.corners[self.side]

    @property
    def rect(self) -> Rect:
        return Rect.spanned(self.corner, self.anchor)

    @property
    def hook(self) -> Point:
        return (self.anchor[0], self.corner[1])

    @property
    def far(self) -> Point:
        """The corner opposite the hook."""
        return (self.corner[0], self.anchor[1])

    def hooked_arc(self) -> tuple[Segment, Segment]:
        return ((self.corner, self.hook), (self.hook, self.anchor))

    def to_dict(self) -> dict:
        return {
            "owner": self.owner.to_dict(),
            "side": self.side,
            "anchor": point_to_json(self.anchor),
        }


def half_rect(e: EdgeRect, anchor: Point, side: int) -> AnchorRect:
    if side not in (0, 1):
        raise InvalidInputError(f"side must be 0 (west) or 1 (east), got {side}")
    if not e.rect.contains_open(anchor):
        raise InvalidInputError("anchor must lie in the interior of its edge rectangle")
    return AnchorRect(e, side, anchor)


# ---------------------------------------------------------------------------
# Axis-parallel geometry
# ---------------------------------------------------------------------------


def _span(a: QuadNum, b: QuadNum) -> tuple[QuadNum, QuadNum]:
    return (a, b) if a <= b else (b, a)


def _segments_meet(p: Segment, q: Segment) -> bool:
    """Closed axis-parallel segments share a point."""
    ps, pu = _span(p[0][0], p[1][0]), _span(p[0][1], p[1][1])
    qs, qu = _span(q[0][0], q[1][0]), _span(q[0][1], q[1][1])
    return ps[0] <= qs[1] and qs[0] <= ps[1] and pu[0] <= qu[1] and qu[0] <= pu[1]


def _sides(r: Rect) -> list[Segment]:
    bl, br = (r.s_lo, r.u_lo), (r.s_hi, r.u_lo)
    tl, tr = (r.s_lo, r.u_hi), (r.s_hi, r.u_hi)
    return [(bl, br), (tl, tr), (bl, tl), (br, tr)]


def _sides_overlap(p: Segment, q: Segment) -> bool:
    """Collinear axis-parallel sides sharing a subsegment of positive length."""
    horizontal = p[0][1] == p[1][1]
    if horizontal != (q[0][1] == q[1][1]):
        return False
    axis, along = (1, 0) if horizontal else (0, 1)
    if p[0][axis] != q[0][axis]:
        return False
    a, b = _span(p[0][along], p[1][along]), _span(q[0][along], q[1][along])
    return max(a[0], b[0]) < min(a[1], b[1])


def rects_meet(a: Rect, b: Rect) -> bool:
    return a.intersection(b) is not None


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def classify_pair(p1: AnchorRect, p2: AnchorRect) -> PairType:
    """Type of an intersecting pair ``(R1', R2')`` with ``R1 < R2`` of one color.

    Raises:
        InvalidInputError: if the subrectangles do not overlap.
    """
    if not rects_meet(p1.rect, p2.rect):
        raise InvalidInputError("anchor subrectangles do not overlap")
    if any(_sides_overlap(x, y) for x in _sides(p1.rect) for y in _sides(p2.rect)):
        return "0"
    hooked = any(_segments_meet(x, y) for x in p1.hooked_arc() for y in p2.hooked_arc())
    if not hooked:
        if p2.rect.contains_closed(p1.anchor):
            return "I-2"
        if p1.rect.contains_closed(p2.anchor):
            return "I-3"
        if p2.owner.rect.contains_closed(p1.anchor):
            return "I-1"
        return "I-4"
    if lies_above(p1.rect, p2.rect):
        return "II-3" if p1.side == 0 else "II-4"
    if p1.rect.contains_closed(p2.anchor):
        return "II-1"
    return "II-2"


@dataclass(frozen=True)
class BuoyTarget:
    """A rectangle that should hold a buoy of ``owner`` (1 or 2 for ``R1``/``R2``)."""

    rect: Rect
    owner: int
    kind: PairType


def _clip(q: Optional[Rect], within: Rect) -> Optional[Rect]:
    return None if q is None else q.intersection(within)


def _spanned(p: Point, q: Point) -> Optional[Rect]:
    if p[0] == q[0] or p[1] == q[1]:
        return None
    return Rect.spanned(p, q)


def _box(s: tuple[QuadNum, QuadNum], u: tuple[QuadNum, QuadNum]) -> Optional[Rect]:
    if s[0] >= s[1] or u[0] >= u[1]:
        return None
    return Rect(s[0], s[1], u[0], u[1])


def _split_targets(p1: AnchorRect, p2: AnchorRect) -> tuple[Optional[Rect], Optional[Rect]]:
    """Buoy rectangles on both sides of a stable leaf through ``int(R1' ∩ R2')``."""
    meet = p1.rect.intersection(p2.rect)
    assert meet is not None
    cut = (meet.s_lo + meet.s_hi) / 2
    r1, r2 = p1.owner.rect, p2.owner.rect
    a1, a2 = p1.anchor, p2.anchor
    if a1[0] > cut:
        q1 = _box((max(cut, r2.s_hi), r1.s_hi), (r1.u_lo, r1.u_hi))
    else:
        q1 = _box((r1.s_lo, min(cut, r2.s_lo)), (r1.u_lo, r1.u_hi))
    s2 = (cut, r2.s_hi) if a2[0] > cut else (r2.s_lo, cut)
    upward = a2[1] > r1.u_hi or (a2[1] >= r1.u_lo and p2.corner[1] > r1.u_hi)
    if upward:
        q2 = _box(s2, (r1.u_hi, r2.u_hi))
    else:
        q2 = _box(s2, (r2.u_lo, r1.u_lo))
    return q1, q2


def q_rects(p1: AnchorRect, p2: AnchorRect, kind: Optional[PairType] = None) -> list[BuoyTarget]:
    """Buoy rectangles for the pair, clipped to the owning edge rectangle.

    Types 0, II-3 and II-4 need none.

    Raises:
        EmptyIntersection: if a required rectangle is empty.
    """
    kind = kind or classify_pair(p1, p2)
    wanted: list[tuple[Optional[Rect], int]]
    if kind in ("I-1", "I-2"):
        wanted = [(_spanned(p1.hook, p2.hook), 2)]
    elif kind == "I-3":
        wanted = [(_spanned(p1.hook, p2.far), 1)]
    elif kind == "I-4":
        q1, q2 = _split_targets(p1, p2)
        wanted = [(q1, 1), (q2, 2)]
    elif kind == "II-1":
        wanted = [(_spanned(p1.hook, p2.anchor), 1)]
    elif kind == "II-2":
        wanted = [(_spanned(p2.hook, p1.anchor), 2)]
    else:
        return []
    out: list[BuoyTarget] = []
    for q, owner in wanted:
        within = (p1 if owner == 1 else p2).owner.rect
        clipped = _clip(q, within)
        if clipped is None:
            raise EmptyIntersection(
                f"type {kind} pair has an empty buoy rectangle: "
                f"{p1.to_dict()} vs {p2.to_dict()}"
            )
        out.append(BuoyTarget(clipped, owner, kind))
    return out
