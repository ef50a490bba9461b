"""Ideal tetrahedra, gluings and veering triangulations, with JSON conversion.

Vertices of every tetrahedron are the side points of its rectangle, indexed
N, E, S, W = 0, 1, 2, 3. The top edge is (0, 2) and the bottom edge (1, 3);
both carry dihedral angle pi, the four equator edges carry 0. Faces omitting
0 or 2 are the bottom faces and are cooriented into the tetrahedron.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Optional

from core.errors import InvalidInputError
from core.run_artifacts import check_schema_version
from orbitspace.space import Point, point_from_json, point_to_json
from rectangles.models import COLORS, EDGE_PAIRS

TOP = (0, 2)
BOTTOM = (1, 3)
IN = "in"
OUT = "out"
PI = 1
ZERO = 0

Perm = tuple[int, int, int, int]


def default_angles() -> tuple[int, ...]:
    return tuple(PI if pair in (TOP, BOTTOM) else ZERO for pair in EDGE_PAIRS)


def default_coorientation() -> tuple[str, str, str, str]:
    return (IN, OUT, IN, OUT)


def invert_perm(perm: Perm) -> Perm:
    back = [0, 0, 0, 0]
    for a, b in enumerate(perm):
        back[b] = a
    return (back[0], back[1], back[2], back[3])


@dataclass(frozen=True)
class Gluing:
    """Face ``face`` of this tetrahedron glued to face ``partner_face`` of ``partner``."""

    partner: int
    partner_face: int
    perm: Perm

    def to_list(self) -> list[Any]:
        return [self.partner, self.partner_face, list(self.perm)]


@dataclass(frozen=True)
class IdealTetra:
    """One tetrahedron of the quotient triangulation.

    ``edges`` holds the edge class of each vertex pair in ``EDGE_PAIRS`` order,
    ``angles`` the matching dihedral labels (``PI`` or ``ZERO``).
    """

    id: int
    vertex_points: Optional[tuple[Point, Point, Point, Point]]
    edges: tuple[int, ...]
    face_keys: tuple[int, ...] = ()
    top_edge: tuple[int, int] = TOP
    bottom_edge: tuple[int, int] = BOTTOM
    angles: tuple[int, ...] = field(default_factory=default_angles)

    def edge_class(self, a: int, b: int) -> int:
        pair = (min(a, b), max(a, b))
        return self.edges[EDGE_PAIRS.index(pair)]

    def angle(self, a: int, b: int) -> int:
        pair = (min(a, b), max(a, b))
        return self.angles[EDGE_PAIRS.index(pair)]


@dataclass
class VeeringTriangulation:
    """Tetrahedra, face gluings, edge colors and face coorientations."""

    tetrahedra: list[IdealTetra]
    gluings: list[list[Gluing]]
    edge_colors: list[str]
    coorientations: list[tuple[str, str, str, str]]

    @property
    def num_tetrahedra(self) -> int:
        return len(self.tetrahedra)

    @property
    def num_edges(self) -> int:
        return len(self.edge_colors)

    @property
    def num_faces(self) -> int:
        return 2 * len(self.tetrahedra)

    def glued(self, t: int, f: int) -> Gluing:
        return self.gluings[t][f]

    def with_edge_color(self, edge: int, color: str) -> "VeeringTriangulation":
        colors = list(self.edge_colors)
        colors[edge] = color
        return replace(self, edge_colors=colors)

    def with_angles(self, t: int, angles: tuple[int, ...]) -> "VeeringTriangulation":
        tets = list(self.tetrahedra)
        tets[t] = replace(tets[t], angles=angles)
        return replace(self, tetrahedra=tets)


def triangulation_to_dict(tri: VeeringTriangulation) -> dict[str, Any]:
    tets = []
    for t, tet in enumerate(tri.tetrahedra):
        entry: dict[str, Any] = {
            "glue": [g.to_list() for g in tri.gluings[t]],
            "top": list(tet.top_edge),
            "bottom": list(tet.bottom_edge),
            "edges": list(tet.edges),
            "angles": list(tet.angles),
        }
        if tet.vertex_points is not None:
            entry["points"] = [point_to_json(p) for p in tet.vertex_points]
        if tet.face_keys:
            entry["faces"] = list(tet.face_keys)
        tets.append(entry)
    return {
        "tets": tets,
        "edge_colors": list(tri.edge_colors),
        "coorient": [list(c) for c in tri.coorientations],
    }


def _perm(raw: Any) -> Perm:
    if not isinstance(raw, list) or sorted(raw) != [0, 1, 2, 3]:
        raise InvalidInputError(f"gluing permutation must list 0..3 once each, got {raw!r}")
    return (raw[0], raw[1], raw[2], raw[3])


def triangulation_from_dict(payload: dict[str, Any]) -> VeeringTriangulation:
    """Rebuild a triangulation from its JSON form.

    Raises:
        InvalidInputError: on malformed payloads.
        SchemaVersionError: on an unknown schema major version.
    """
    if "schema_version" in payload:
        check_schema_version(payload)
    raw_tets = payload.get("tets")
    colors = payload.get("edge_colors")
    coorient = payload.get("coorient")
    if not isinstance(raw_tets, list) or not isinstance(colors, list) or not isinstance(coorient, list):
        raise InvalidInputError("triangulation needs 'tets', 'edge_colors' and 'coorient' lists")
    if any(c not in COLORS for c in colors):
        raise InvalidInputError(f"edge colors must be red or blue, got {colors!r}")
    if len(coorient) != len(raw_tets):
        raise InvalidInputError("one coorientation row is needed per tetrahedron")

    tets: list[IdealTetra] = []
    gluings: list[list[Gluing]] = []
    for t, raw in enumerate(raw_tets):
        glue = raw.get("glue")
        if not isinstance(glue, list) or len(glue) != 4:
            raise InvalidInputError(f"tetrahedron {t} needs four gluings")
        gluings.append([Gluing(int(g[0]), int(g[1]), _perm(g[2])) for g in glue])
        points = raw.get("points")
        tets.append(IdealTetra(
            id=t,
            vertex_points=tuple(point_from_json(p) for p in points) if points else None,  # type: ignore[arg-type]
            edges=tuple(int(e) for e in raw.get("edges", [])),
            face_keys=tuple(int(f) for f in raw.get("faces", [])),
            top_edge=tuple(raw.get("top", TOP)),  # type: ignore[arg-type]
            bottom_edge=tuple(raw.get("bottom", BOTTOM)),  # type: ignore[arg-type]
            angles=tuple(int(a) for a in raw.get("angles", default_angles())),
        ))
        if len(tets[-1].edges) != 6:
            raise InvalidInputError(f"tetrahedron {t} needs six edge classes")
    return VeeringTriangulation(
        tetrahedra=tets,
        gluings=gluings,
        edge_colors=[str(c) for c in colors],
        coorientations=[tuple(c) for c in coorient],  # type: ignore[misc]
    )


def edge_degrees(tri: VeeringTriangulation) -> list[dict[str, int]]:
    """Per edge class: tetra-edge incidences and pi incidences."""
    degrees = [{"incidences": 0, "pi": 0} for _ in tri.edge_colors]
    for tet in tri.tetrahedra:
        for cls, angle in zip(tet.edges, tet.angles):
            degrees[cls]["incidences"] += 1
            degrees[cls]["pi"] += 1 if angle == PI else 0
    return degrees
