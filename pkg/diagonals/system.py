"""Diagonal systems: one PL diagonal per edge-rectangle orbit.

Arcs are stored on the normal-form representative of each orbit, keyed by
orbit id, and transported to lifts on demand, so the system is equivariant
by construction. Anchor diagonals are the union of the two tight half-arcs
from the corners to the anchor; two node goals are then enforced on the
lifts in a window: a node of one diagonal lying on another is a node of it,
and adjacent nodes never share a deck orbit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence

from anchors.system import AnchorSystem
from core.errors import InvalidInputError, InvariantBreach
from diagonals.arcs import PLArc
from diagonals.config import NODE_GOAL_PASSES, SPLIT_DEPTH
from diagonals.pairs import half_rect
from diagonals.tight import SlitConfig, tight_arc
from orbitspace.normal_form import apply_lattice_map, orbit_id
from orbitspace.points import PointOrbitSet
from orbitspace.space import LatticeMap, OrbitSpace, Point, Window, point_to_float
from rectangles.enumerate import enumerate_edge_rects
from rectangles.models import EdgeRect

logger = logging.getLogger(__name__)


class MissingDiagonal(InvariantBreach):
    """Raised when a lift's orbit has no diagonal in the system."""


@dataclass(frozen=True)
class DiagonalEntry:
    """Diagonal of one orbit in the frame of its representative."""

    rect: EdgeRect
    arc: PLArc

    def to_dict(self, oid: str) -> dict[str, Any]:
        return {"orbit_id": oid, "rect": self.rect.to_dict(), **self.arc.to_dict()}


@dataclass(frozen=True)
class DiagonalLift:
    """A diagonal placed on one lift; ``deck`` carries the representative onto it."""

    orbit_id: str
    rect: EdgeRect
    arc: PLArc
    deck: LatticeMap

    @property
    def height(self) -> int:
        return self.deck.k

    @property
    def color(self) -> str:
        return self.rect.color


@dataclass
class DiagonalSystem:
    os: OrbitSpace
    C: PointOrbitSet
    entries: dict[str, DiagonalEntry] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def locate(self, e: EdgeRect) -> tuple[str, LatticeMap]:
        """Orbit id of ``e`` and the map carrying ``e`` onto the representative frame."""
        return orbit_id(self.os, e.corners)

    def diagonal(self, e: EdgeRect) -> PLArc:
        oid, g = self.locate(e)
        entry = self.entries.get(oid)
        if entry is None:
            raise MissingDiagonal(f"no diagonal for orbit {oid} of {e.to_dict()}")
        return entry.arc.mapped(self.os, g.inverse())

    def lift(self, e: EdgeRect) -> DiagonalLift:
        oid, g = self.locate(e)
        if oid not in self.entries:
            raise MissingDiagonal(f"no diagonal for orbit {oid} of {e.to_dict()}")
        h = g.inverse()
        return DiagonalLift(oid, e, self.entries[oid].arc.mapped(self.os, h), h)

    def replace(self, oid: str, arc: PLArc) -> "DiagonalSystem":
        """Copy with the representative arc of ``oid`` replaced."""
        entries = dict(self.entries)
        entries[oid] = DiagonalEntry(entries[oid].rect, arc)
        return DiagonalSystem(self.os, self.C, entries)

    def with_arc(self, e: EdgeRect, arc: PLArc) -> "DiagonalSystem":
        """Copy with the orbit of ``e`` carrying ``arc`` (given in the frame of ``e``)."""
        if arc.endpoints != e.corners:
            raise InvalidInputError("a diagonal must join the corners of its rectangle")
        oid, g = self.locate(e)
        entries = dict(self.entries)
        entries[oid] = DiagonalEntry(e.mapped(self.os, g), arc.mapped(self.os, g))
        return DiagonalSystem(self.os, self.C, entries)

    def materialize(
        self,
        window: Window,
        height_bound: Optional[int] = None,
        point_budget: Optional[int] = None,
    ) -> list[DiagonalLift]:
        """Every diagonal lift on an edge rectangle with corners in ``window``.

        With ``height_bound`` set, lifts more than that many levels from the
        representative are dropped.
        """
        lifts = [self.lift(e) for e in enumerate_edge_rects(self.os, self.C, window, point_budget)]
        if height_bound is not None:
            lifts = [d for d in lifts if abs(d.height) <= height_bound]
        return lifts

    def arcs(self) -> Iterator[tuple[str, PLArc]]:
        for oid in sorted(self.entries):
            yield oid, self.entries[oid].arc

    def node_count(self) -> int:
        return sum(len(entry.arc.nodes) for entry in self.entries.values())

    def to_dict(self) -> dict[str, Any]:
        return {"diagonals": [self.entries[oid].to_dict(oid) for oid in sorted(self.entries)]}

    @classmethod
    def from_dict(cls, os: OrbitSpace, C: PointOrbitSet, payload: dict[str, Any]) -> "DiagonalSystem":
        raw = payload.get("diagonals")
        if not isinstance(raw, list):
            raise InvalidInputError("diagonal system payload needs a 'diagonals' list")
        system = cls(os, C)
        for item in raw:
            rect = EdgeRect.from_dict(item["rect"])
            system = system.with_arc(rect, PLArc.from_dict(item))
        return system


def diagonal_system_to_dict(system: DiagonalSystem) -> dict[str, Any]:
    return system.to_dict()


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def owned_buoys(buoys: Optional[PointOrbitSet]) -> dict[str, list[Point]]:
    """Buoy points per owning orbit id, in the owner's representative frame."""
    out: dict[str, list[Point]] = {}
    if buoys is None:
        return out
    for rep in buoys.attached():
        assert rep.owner is not None
        out.setdefault(rep.owner, []).append(rep.point)
    return out


def anchor_diagonal(rep: EdgeRect, anchor: Point, slits: Sequence[Point] = ()) -> PLArc:
    """Union of the tight arcs from each corner to the anchor.

    Each half uses the slits inside its own anchor subrectangle; the hook is
    the corner sharing the anchor's stable leaf.
    """
    nodes: list[Point] = []
    for side in (0, 1):
        half = half_rect(rep, anchor, side)
        inside = tuple(p for p in slits if half.rect.contains_open(p))
        nodes.extend(tight_arc(SlitConfig(half.rect, (half.corner, anchor), inside)).nodes)
    return PLArc.from_points(nodes)


def straight_diagonal(rep: EdgeRect) -> PLArc:
    """The segment between the corners, with its midpoint as a node."""
    west, east = rep.corners
    mid = ((west[0] + east[0]) / 2, (west[1] + east[1]) / 2)
    return PLArc((west, mid, east))


def representatives(os: OrbitSpace, edges: Sequence[EdgeRect]) -> dict[str, EdgeRect]:
    reps: dict[str, EdgeRect] = {}
    for e in edges:
        oid, g = orbit_id(os, e.corners)
        if oid not in reps:
            reps[oid] = e.mapped(os, g)
    return reps


def build_pl_diagonals(
    os: OrbitSpace,
    C: PointOrbitSet,
    anchors: AnchorSystem,
    buoys: Optional[PointOrbitSet],
    window: Window,
    avoid: Optional[PointOrbitSet] = None,
    point_budget: Optional[int] = None,
) -> DiagonalSystem:
    """Anchor diagonals for every orbit met in ``window``, node goals enforced.

    Raises:
        SlitOnEndpoint: propagated from tight arcs.
    """
    edges = enumerate_edge_rects(os, C, window, point_budget)
    owned = owned_buoys(buoys)
    system = DiagonalSystem(os, C)
    for oid, rep in representatives(os, edges).items():
        arc = anchor_diagonal(rep, anchors.anchor(rep), owned.get(oid, ()))
        system.entries[oid] = DiagonalEntry(rep, arc)
    system = enforce_node_goals(system, window, avoid, point_budget)
    logger.info(
        "PL diagonals: %d orbits, %d nodes, %d buoys used",
        len(system), system.node_count(), sum(len(v) for v in owned.values()),
    )
    return system


def straight_diagonals(
    os: OrbitSpace,
    C: PointOrbitSet,
    window: Window,
    point_budget: Optional[int] = None,
) -> DiagonalSystem:
    edges = enumerate_edge_rects(os, C, window, point_budget)
    system = DiagonalSystem(os, C)
    for oid, rep in representatives(os, edges).items():
        system.entries[oid] = DiagonalEntry(rep, straight_diagonal(rep))
    return enforce_node_goals(system, window, None, point_budget)


# ---------------------------------------------------------------------------
# Node goals
# ---------------------------------------------------------------------------


def dyadic_fractions(depth: int = SPLIT_DEPTH) -> Iterator[Fraction]:
    """1/2, 1/4, 3/4, 1/8, 3/8, ... down to ``2**-depth``."""
    for level in range(1, depth + 1):
        den = 1 << level
        for num in range(1, den, 2):
            yield Fraction(num, den)


def _blocked(os: OrbitSpace, C: PointOrbitSet, avoid: Optional[PointOrbitSet], p: Point) -> bool:
    return C.contains(os, p) or (avoid is not None and avoid.contains(os, p))


def split_point(
    os: OrbitSpace,
    C: PointOrbitSet,
    avoid: Optional[PointOrbitSet],
    arc: PLArc,
    i: int,
) -> Point:
    """A point inside segment ``i`` whose orbit differs from both of its nodes.

    Raises:
        InvariantBreach: if no dyadic point up to ``SPLIT_DEPTH`` qualifies.
    """
    a, b = arc.nodes[i], arc.nodes[i + 1]
    for t in dyadic_fractions():
        p = arc.point_on_segment(i, t)
        if os.same_orbit(p, a) or os.same_orbit(p, b) or _blocked(os, C, avoid, p):
            continue
        return p
    raise InvariantBreach(f"no orbit-separating point on segment {point_to_float(a)} -> {point_to_float(b)}")


def separate_adjacent_orbits(
    system: DiagonalSystem,
    avoid: Optional[PointOrbitSet] = None,
) -> tuple[DiagonalSystem, int]:
    """Split every segment whose two nodes share a deck orbit."""
    os = system.os
    inserted = 0
    for oid, arc in list(system.arcs()):
        current = arc
        i = 0
        while i < len(current.nodes) - 1:
            if os.same_orbit(current.nodes[i], current.nodes[i + 1]):
                current = current.insert_node(split_point(os, system.C, avoid, current, i))
                inserted += 1
            i += 1
        if current is not arc:
            system = system.replace(oid, current)
    return system, inserted


def share_nodes(system: DiagonalSystem, lifts: Sequence[DiagonalLift]) -> tuple[DiagonalSystem, int]:
    """Insert into each diagonal the nodes of other lifts lying on it."""
    os = system.os
    pending: dict[str, set[Point]] = {}
    for a in lifts:
        for b in lifts:
            if a.rect == b.rect or not b.rect.rect.intersection(a.rect.rect):
                continue
            for n in a.arc.nodes[1:-1]:
                if b.arc.contains_interior(n) and not b.arc.is_node(n):
                    pending.setdefault(b.orbit_id, set()).add(apply_lattice_map(os, b.deck.inverse(), n))
    inserted = 0
    for oid, pts in sorted(pending.items()):
        arc = system.entries[oid].arc
        for p in sorted(pts):
            if not arc.is_node(p):
                arc = arc.insert_node(p)
                inserted += 1
        system = system.replace(oid, arc)
    return system, inserted


def enforce_node_goals(
    system: DiagonalSystem,
    window: Window,
    avoid: Optional[PointOrbitSet] = None,
    point_budget: Optional[int] = None,
) -> DiagonalSystem:
    """Alternate shared-node insertion and orbit separation until neither adds a node.

    Whatever is left after ``NODE_GOAL_PASSES`` shows up in ``verify_plo``.
    """
    for _ in range(NODE_GOAL_PASSES):
        system, split = separate_adjacent_orbits(system, avoid)
        system, shared = share_nodes(system, system.materialize(window, point_budget=point_budget))
        if split == 0 and shared == 0:
            return system
        logger.debug("Node goals: %d orbit splits, %d shared nodes", split, shared)
    logger.warning("Node goals still unsettled after %d passes", NODE_GOAL_PASSES)
    return system
