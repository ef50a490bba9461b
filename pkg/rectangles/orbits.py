"""Deck-orbit catalog of tetrahedron and edge rectangles.

A breadth-first search over face adjacency, started from the tetrahedron
rectangle above a seed edge rectangle, reaches every tetrahedron rectangle
orbit. Each orbit is stored by its normal-form representative, and each face
records the neighbouring orbit together with the vertex correspondence.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Optional

from core.errors import InvariantBreach
from orbitspace.normal_form import NormalKey, apply_lattice_map, find_deck_element, normalize_points
from orbitspace.points import PointOrbitSet
from orbitspace.space import LatticeMap, OrbitSpace, Point
from rectangles.config import MAX_TETRA_ORBITS
from rectangles.models import EDGE_PAIRS, EdgeRect, TetraRect
from rectangles.staircase import staircase
from rectangles.tetra import adjacent_tetra, tetra_above

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaceLink:
    """Face ``face`` of one orbit glued to face ``partner_face`` of ``partner``.

    ``perm[a]`` is the vertex of the partner matched with vertex ``a``; the
    omitted vertices are matched with each other. ``deck`` carries the
    neighbouring rectangle onto the partner's representative.
    """

    face: int
    partner: int
    partner_face: int
    perm: tuple[int, int, int, int]
    deck: LatticeMap

    def to_dict(self) -> dict[str, Any]:
        return {
            "face": self.face,
            "partner": self.partner,
            "partner_face": self.partner_face,
            "perm": list(self.perm),
            "deck": self.deck.to_dict(),
        }


@dataclass
class OrbitCatalog:
    """Normal-form representatives of tetrahedron and edge rectangle orbits."""

    tetras: list[TetraRect] = field(default_factory=list)
    tetra_keys: list[NormalKey] = field(default_factory=list)
    links: list[list[Optional[FaceLink]]] = field(default_factory=list)
    edges: list[EdgeRect] = field(default_factory=list)
    edge_keys: list[NormalKey] = field(default_factory=list)
    tetra_edges: list[tuple[int, ...]] = field(default_factory=list)
    face_keys: list[tuple[int, ...]] = field(default_factory=list)
    face_key_list: list[NormalKey] = field(default_factory=list)

    def tetra_index(self, key: NormalKey) -> Optional[int]:
        try:
            return self.tetra_keys.index(key)
        except ValueError:
            return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "tetras": [t.to_dict() for t in self.tetras],
            "edges": [e.to_dict() for e in self.edges],
            "tetra_edges": [list(x) for x in self.tetra_edges],
            "links": [[lk.to_dict() if lk else None for lk in row] for row in self.links],
            "faces": len(self.face_key_list),
        }


def _representative(os: OrbitSpace, key: NormalKey) -> list[Point]:
    return [os.to_eigen(x) for x in key]


def _class_index(keys: list[NormalKey], key: NormalKey) -> int:
    if key not in keys:
        keys.append(key)
    return keys.index(key)


def seed_tetra(
    os: OrbitSpace,
    C: PointOrbitSet,
    point_budget: Optional[int] = None,
) -> TetraRect:
    """Tetrahedron rectangle above the widest unit staircase element at the drilled point."""
    base = os.drill_point()
    seed = staircase(os, C, base, "I", 1, point_budget).elements[0]
    return tetra_above(os, C, seed, point_budget)


def enumerate_orbit_representatives(
    os: OrbitSpace,
    C: PointOrbitSet,
    point_budget: Optional[int] = None,
) -> OrbitCatalog:
    """All tetrahedron and edge rectangle orbits, found by face adjacency.

    Raises:
        WindowExhausted: if a face partner cannot be found after widening.
        InvariantBreach: if the search does not close up.
    """
    catalog = OrbitCatalog()

    def register(T: TetraRect) -> tuple[int, LatticeMap]:
        key, g = normalize_points(os, T.points)
        index = catalog.tetra_index(key)
        if index is None:
            rep = TetraRect.from_points(_representative(os, key))
            catalog.tetras.append(rep)
            catalog.tetra_keys.append(key)
            catalog.links.append([None, None, None, None])
            queue.append(len(catalog.tetras) - 1)
            index = len(catalog.tetras) - 1
            if index >= MAX_TETRA_ORBITS:
                raise InvariantBreach(f"orbit search exceeded {MAX_TETRA_ORBITS} tetrahedron orbits")
        return index, g

    queue: deque[int] = deque()
    register(seed_tetra(os, C, point_budget))
    while queue:
        t = queue.popleft()
        rep = catalog.tetras[t]
        for i in range(4):
            if catalog.links[t][i] is not None:
                continue
            neighbour = adjacent_tetra(os, C, rep, i, point_budget)
            t2, g = register(neighbour)
            partner = catalog.tetras[t2]
            images = [partner.index_of(apply_lattice_map(os, g, p)) for p in neighbour.points]
            perm = [0, 0, 0, 0]
            for a in range(4):
                if a == i:
                    continue
                perm[a] = images[neighbour.index_of(rep.points[a])]
            new_vertex = next(b for b in range(4) if neighbour.points[b] not in rep.points)
            j = images[new_vertex]
            perm[i] = j
            catalog.links[t][i] = FaceLink(i, t2, j, tuple(perm), g)  # type: ignore[arg-type]
            back = [0, 0, 0, 0]
            for a in range(4):
                back[perm[a]] = a
            existing = catalog.links[t2][j]
            reverse = FaceLink(j, t, i, tuple(back), g.inverse())  # type: ignore[arg-type]
            if existing is None:
                catalog.links[t2][j] = reverse
            elif (existing.partner, existing.partner_face, existing.perm) != (t, i, reverse.perm):
                raise InvariantBreach(f"face {j} of orbit {t2} is glued twice")

    for t, rep in enumerate(catalog.tetras):
        catalog.tetra_edges.append(tuple(
            _edge_class(os, catalog, rep.edge(a, b)) for a, b in EDGE_PAIRS
        ))
        catalog.face_keys.append(tuple(
            _class_index(catalog.face_key_list, normalize_points(os, rep.face_points(i))[0])
            for i in range(4)
        ))
    logger.info(
        "Orbit search: %d tetrahedron orbits, %d edge orbits, %d face orbits",
        len(catalog.tetras),
        len(catalog.edges),
        len(catalog.face_key_list),
    )
    return catalog


def _edge_class(os: OrbitSpace, catalog: OrbitCatalog, e: EdgeRect) -> int:
    key, _ = normalize_points(os, e.corners)
    if key not in catalog.edge_keys:
        catalog.edge_keys.append(key)
        catalog.edges.append(EdgeRect.from_corners(*_representative(os, key)))
    return catalog.edge_keys.index(key)


def same_tetra_orbit(os: OrbitSpace, a: TetraRect, b: TetraRect) -> bool:
    return find_deck_element(os, a.points, b.points) is not None
