"""Tight arcs: shortest paths across a rectangle slit along stable leaves.

Each slit point carries a stable segment running to the side of the
rectangle away from the hook. The shortest path between the two endpoints
that stays homotopic to the hooked boundary path must pass on the hook side
of every slit, so after reflecting the rectangle until the start is
bottom-left and the hook bottom-right, it is the lower convex chain of the
endpoints and slit points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Literal

from core.errors import InvalidInputError
from diagonals.arcs import PLArc
from exactfield.quadnum import QuadNum
from orbitspace.space import Point, point_to_float, point_to_json
from rectangles.models import Rect

logger = logging.getLogger(__name__)

SlitSide = Literal["top", "bottom"]


class SlitOnEndpoint(InvalidInputError):
    """Raised when a slit point coincides with an endpoint or touches the boundary."""


@dataclass(frozen=True)
class SlitConfig:
    """A rectangle, the endpoints of the arc, and the slit points inside it.

    ``endpoints`` are opposite corners; the arc starts at the first. The hook
    is the corner on the stable leaf of the second endpoint and the unstable
    leaf of the first.
    """

    rect: Rect
    endpoints: tuple[Point, Point]
    slit_points: tuple[Point, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        start, end = self.endpoints
        if Rect.spanned(start, end) != self.rect:
            raise InvalidInputError("arc endpoints must be opposite corners of the rectangle")
        seen_s: set[QuadNum] = set()
        for p in self.slit_points:
            if p in self.endpoints:
                raise SlitOnEndpoint(f"slit point {point_to_float(p)} is an endpoint")
            if not self.rect.contains_closed(p):
                raise InvalidInputError(f"slit point {point_to_float(p)} lies outside the rectangle")
            if not self.rect.contains_open(p):
                raise SlitOnEndpoint(f"slit point {point_to_float(p)} lies on the boundary")
            if p[0] in seen_s:
                raise InvalidInputError(f"two slits share the stable leaf s={float(p[0]):.6g}")
            seen_s.add(p[0])

    @property
    def hook(self) -> Point:
        return (self.endpoints[1][0], self.endpoints[0][1])

    @property
    def slit_side(self) -> SlitSide:
        return "top" if self.endpoints[1][1] > self.endpoints[0][1] else "bottom"

    def to_dict(self) -> dict[str, Any]:
        return {
            "rect": self.rect.to_dict(),
            "endpoints": [point_to_json(p) for p in self.endpoints],
            "hook": point_to_json(self.hook),
            "slit_side": self.slit_side,
            "slit_points": [point_to_json(p) for p in self.slit_points],
        }


def _cross(o: Point, a: Point, b: Point) -> QuadNum:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def tight_arc(cfg: SlitConfig) -> PLArc:
    """The tight arc of ``cfg``; nodes are the endpoints and every slit point it touches.

    Raises:
        SlitOnEndpoint: via ``SlitConfig`` validation.
        DegenerateRect: via ``Rect`` when the endpoints share a leaf.
    """
    start, end = cfg.endpoints
    fs = 1 if end[0] > start[0] else -1
    fu = 1 if end[1] > start[1] else -1

    def flip(p: Point) -> Point:
        return (p[0] * fs, p[1] * fu)

    pts = sorted({flip(p) for p in cfg.slit_points} | {flip(start), flip(end)})
    chain: list[Point] = []
    for p in pts:
        # collinear slit points stay on the chain as nodes
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p).sign() < 0:
            chain.pop()
        chain.append(p)
    arc = PLArc.from_points([flip(p) for p in chain])
    logger.debug(
        "Tight arc with %d slits: %d nodes, %d turns",
        len(cfg.slit_points), len(arc.nodes), len(arc.turns()),
    )
    return arc
