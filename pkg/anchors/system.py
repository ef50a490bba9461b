"""Anchor systems: one interior point per edge-rectangle orbit.

Anchors are stored on normal-form representatives and transported to any
lift, so ``anchor(g R) = g anchor(R)`` holds by construction. Unpinched
rectangles are anchored at their core point, or nearby inside the core box
when the core belongs to the avoid set. Pinched families are placed by their
grid embedding.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from anchors.pinched import PinchedGrid, PinchedUnresolved, pinched_grid, place_family, snap_near, strictly_ordered
from core.errors import InvariantBreach
from core.verification import CheckReport
from orbitspace.normal_form import NormalKey, apply_lattice_map, normalize_points, orbit_id_of
from orbitspace.points import PointOrbitSet
from orbitspace.space import LatticeMap, OrbitSpace, Point, Window, point_from_json, point_to_float, point_to_json
from rectangles.core_points import ABOVE, CoreSolver
from rectangles.enumerate import enumerate_edge_rects
from rectangles.models import EdgeRect

logger = logging.getLogger(__name__)

SOURCES = ("core", "shifted", "pinched")


class MissingAnchor(InvariantBreach):
    """Raised when an anchor is requested for an orbit the system cannot resolve."""


@dataclass(frozen=True)
class AnchorEntry:
    """Anchor of one orbit, stored in the normal frame of its representative."""

    rect: EdgeRect
    anchor: Point
    source: str
    rho: Optional[int] = None

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "rect": self.rect.to_dict(),
            "anchor": point_to_json(self.anchor),
            "source": self.source,
        }
        if self.rho is not None:
            payload["rho"] = self.rho
        return payload


@dataclass
class AnchorSystem:
    os: OrbitSpace
    entries: dict[NormalKey, AnchorEntry] = field(default_factory=dict)
    families: list[PinchedGrid] = field(default_factory=list)
    resolver: Optional[Callable[[EdgeRect], None]] = None

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, e: EdgeRect) -> tuple[AnchorEntry, LatticeMap]:
        key, g = normalize_points(self.os, e.corners)
        found = self.entries.get(key)
        if found is None and self.resolver is not None:
            self.resolver(e)
            found = self.entries.get(key)
        if found is None:
            raise MissingAnchor(f"no anchor for orbit of {e.to_dict()}")
        return found, g

    def anchor(self, e: EdgeRect) -> Point:
        found, g = self.entry(e)
        return apply_lattice_map(self.os, g.inverse(), found.anchor)

    def with_anchor(self, e: EdgeRect, point: Point, source: str = "core") -> "AnchorSystem":
        """Copy with the orbit of ``e`` anchored at ``point`` (given in the frame of ``e``)."""
        key, g = normalize_points(self.os, e.corners)
        entries = dict(self.entries)
        entries[key] = AnchorEntry(e.mapped(self.os, g), apply_lattice_map(self.os, g, point), source)
        return AnchorSystem(self.os, entries, list(self.families), self.resolver)

    def source_counts(self) -> dict[str, int]:
        counts = {s: 0 for s in SOURCES}
        for entry in self.entries.values():
            counts[entry.source] += 1
        return counts

    def to_dict(self) -> dict[str, Any]:
        return {
            "anchors": {orbit_id_of(key): entry.to_dict() for key, entry in self.entries.items()},
            "families": [f.to_dict() for f in self.families],
            "counts": self.source_counts(),
        }

    @classmethod
    def from_dict(cls, os: OrbitSpace, payload: dict[str, Any]) -> "AnchorSystem":
        entries: dict[NormalKey, AnchorEntry] = {}
        for raw in payload.get("anchors", {}).values():
            rect = EdgeRect.from_dict(raw["rect"])
            key, g = normalize_points(os, rect.corners)
            entries[key] = AnchorEntry(
                rect.mapped(os, g),
                apply_lattice_map(os, g, point_from_json(raw["anchor"])),
                raw.get("source", "core"),
                raw.get("rho"),
            )
        return cls(os, entries)


class AnchorBuilder:
    """Resolves anchors orbit by orbit; also serves as the system's resolver."""

    def __init__(
        self,
        os: OrbitSpace,
        C: PointOrbitSet,
        avoid: Optional[PointOrbitSet] = None,
        point_budget: Optional[int] = None,
        solver: Optional[CoreSolver] = None,
    ):
        self.os = os
        self.C = C
        self.avoid = avoid
        self.solver = solver or CoreSolver(os, C, point_budget)
        self.system = AnchorSystem(os, resolver=self.resolve)

    def blocked(self, p: Point) -> bool:
        if self.C.contains(self.os, p):
            return True
        return self.avoid is not None and self.avoid.contains(self.os, p)

    def _store(self, e: EdgeRect, anchor: Point, source: str, rho: Optional[int] = None) -> None:
        key, g = normalize_points(self.os, e.corners)
        if key in self.system.entries:
            return
        self.system.entries[key] = AnchorEntry(
            e.mapped(self.os, g), apply_lattice_map(self.os, g, anchor), source, rho
        )

    def resolve(self, e: EdgeRect) -> None:
        key, g = normalize_points(self.os, e.corners)
        if key in self.system.entries:
            return
        rep = e.mapped(self.os, g)
        core = self.solver.core_point(rep)
        if core.pinched:
            self._resolve_pinched(rep, core.point)
        elif self.blocked(core.point):
            self._store(rep, self._shifted(rep, core.point), "shifted")
        else:
            self._store(rep, core.point, "core")

    def _shifted(self, e: EdgeRect, core: Point) -> Point:
        box = self.solver.core_box(e)
        half = point_to_float((box.s_hi - core[0], box.u_hi - core[1]))
        target = (half[0] / 2, half[1] / 3)
        p = snap_near(
            self.os,
            self.os.to_lattice(core),
            target[0],
            target[1],
            lambda q: box.contains_open(q) and not self.blocked(q),
        )
        if p is None:
            raise InvariantBreach(f"no admissible anchor in the core box of {e.to_dict()}")
        logger.debug("Core of %s is blocked; anchor shifted inside its box", e.to_dict())
        return p

    def _resolve_pinched(self, rep: EdgeRect, core: Point) -> None:
        grid = pinched_grid(self.solver, rep, core)
        placed, rho = place_family(self.solver, grid, self.blocked)
        self.system.families.append(grid)
        for member, anchor in placed.items():
            self._store(member, anchor, "pinched", rho)
        if normalize_points(self.os, rep.corners)[0] not in self.system.entries:
            raise PinchedUnresolved(f"seed {rep.to_dict()} missing from its own family")


def build_anchor_system(
    os: OrbitSpace,
    C: PointOrbitSet,
    window: Window,
    avoid: Optional[PointOrbitSet] = None,
    point_budget: Optional[int] = None,
    solver: Optional[CoreSolver] = None,
) -> AnchorSystem:
    """Anchor every edge-rectangle orbit met in ``window``.

    The returned system resolves further orbits lazily the same way.

    Raises:
        WindowExhausted: if a staircase or tetrahedron search runs out.
        PinchedUnresolved: if a pinched family cannot be placed.
    """
    builder = AnchorBuilder(os, C, avoid, point_budget, solver)
    edges = enumerate_edge_rects(os, C, window, point_budget)
    for e in edges:
        builder.resolve(e)
    logger.info(
        "Anchor system: %d orbits from %d window rectangles, sources=%s",
        len(builder.system), len(edges), builder.system.source_counts(),
    )
    return builder.system


def verify_anchor_system(
    system: AnchorSystem,
    os: OrbitSpace,
    C: PointOrbitSet,
    window: Window,
    avoid: Optional[PointOrbitSet] = None,
    point_budget: Optional[int] = None,
    solver: Optional[CoreSolver] = None,
) -> CheckReport:
    """Check interior placement, avoidance and strict staircase monotonicity.

    Every edge rectangle in ``window`` is compared with the rectangle directly
    above it at each of its corners.
    """
    solver = solver or CoreSolver(os, C, point_budget)
    report = CheckReport(name="anchor_monotonicity", window=window.to_dict())
    for e in enumerate_edge_rects(os, C, window, point_budget):
        a1 = system.anchor(e)
        if not e.rect.contains_open(a1):
            report.add("anchor_interior", {"rect": e.to_dict(), "anchor": point_to_json(a1)})
        if C.contains(os, a1) or (avoid is not None and avoid.contains(os, a1)):
            report.add("anchor_avoid", {"rect": e.to_dict(), "anchor": point_to_json(a1)})
        for nb in solver.neighbours(e):
            if nb.direction != ABOVE:
                continue
            a2 = system.anchor(nb.rect)
            report.count()
            if not strictly_ordered(nb.corner, a1, a2):
                report.add(
                    "strict_monotonicity",
                    {
                        "lower": e.to_dict(),
                        "upper": nb.rect.to_dict(),
                        "corner": point_to_json(nb.corner),
                    },
                    "anchor rectangles not strictly wider and shorter",
                )
    logger.info(
        "Anchor verification: %d pairs, %d violations",
        report.checked_pairs, len(report.violations),
    )
    return report
