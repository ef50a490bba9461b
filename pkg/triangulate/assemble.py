"""Assembly of the quotient veering triangulation from rectangle orbits."""

from __future__ import annotations

import logging
from typing import Optional

from core.errors import InvariantBreach, VerificationFailure
from orbitspace.normal_form import OrbitAmbiguity
from orbitspace.points import PointOrbitSet
from orbitspace.space import OrbitSpace, Window
from rectangles.models import WindowExhausted
from rectangles.orbits import OrbitCatalog, enumerate_orbit_representatives, same_tetra_orbit
from rectangles.tetra import enumerate_tetra_rects
from triangulate.models import (
    Gluing,
    IdealTetra,
    VeeringTriangulation,
    default_coorientation,
)

logger = logging.getLogger(__name__)


class UnmatchedFace(VerificationFailure):
    """Raised when a face finds no partner within the widening budget."""


def _check_window_coverage(
    os: OrbitSpace,
    C: PointOrbitSet,
    catalog: OrbitCatalog,
    window: Window,
    point_budget: Optional[int],
) -> int:
    rects = enumerate_tetra_rects(os, C, window, point_budget)
    for T in rects:
        hits = sum(same_tetra_orbit(os, T, rep) for rep in catalog.tetras)
        if hits == 0:
            raise InvariantBreach(f"tetrahedron rectangle {T.to_dict()} missed by the face search")
        if hits > 1:
            raise OrbitAmbiguity(f"tetrahedron rectangle {T.to_dict()} matches {hits} orbits")
    return len(rects)


def triangulation_from_catalog(catalog: OrbitCatalog) -> VeeringTriangulation:
    tets: list[IdealTetra] = []
    gluings: list[list[Gluing]] = []
    for t, rep in enumerate(catalog.tetras):
        row: list[Gluing] = []
        for i, link in enumerate(catalog.links[t]):
            if link is None:
                raise UnmatchedFace(f"face {i} of tetrahedron {t} has no partner")
            row.append(Gluing(link.partner, link.partner_face, link.perm))
        gluings.append(row)
        tets.append(IdealTetra(
            id=t,
            vertex_points=rep.points,
            edges=catalog.tetra_edges[t],
            face_keys=catalog.face_keys[t],
        ))
    return VeeringTriangulation(
        tetrahedra=tets,
        gluings=gluings,
        edge_colors=[e.color for e in catalog.edges],
        coorientations=[default_coorientation() for _ in tets],
    )


def assemble(
    os: OrbitSpace,
    C: PointOrbitSet,
    window: Optional[Window] = None,
    point_budget: Optional[int] = None,
) -> VeeringTriangulation:
    """One tetrahedron per orbit of tetrahedron rectangles, glued along shared faces.

    When ``window`` is given, every tetrahedron rectangle in it is checked to
    belong to exactly one assembled orbit.

    Raises:
        UnmatchedFace: if a face partner lies beyond the widening budget.
        OrbitAmbiguity: if a rectangle matches more than one orbit.
    """
    try:
        catalog = enumerate_orbit_representatives(os, C, point_budget)
    except WindowExhausted as exc:
        raise UnmatchedFace(f"face partner search exhausted: {exc}") from exc
    if window is not None:
        checked = _check_window_coverage(os, C, catalog, window, point_budget)
        logger.info("Window coverage: %d tetrahedron rectangles matched", checked)
    tri = triangulation_from_catalog(catalog)
    logger.info(
        "Assembled %d tetrahedra, %d edges, %d faces",
        tri.num_tetrahedra,
        tri.num_edges,
        tri.num_faces,
    )
    return tri
