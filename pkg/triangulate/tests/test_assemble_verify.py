"""Tests for assembly and the veering checks."""

import json
import random

import pytest

from core.run_artifacts import SchemaVersionError, dump_document
from orbitspace.monodromy import parse_monodromy_spec
from orbitspace.points import drilled_set
from orbitspace.space import OrbitSpace, Window, build_orbit_space
from rectangles.models import BLUE, RED
from triangulate.assemble import assemble
from triangulate.encoding import canonical_encoding
from triangulate.models import (
    PI,
    ZERO,
    Gluing,
    VeeringTriangulation,
    edge_degrees,
    triangulation_from_dict,
    triangulation_to_dict,
)
from triangulate.verify import verify_veering


def _assemble(word: str) -> VeeringTriangulation:
    os = build_orbit_space(parse_monodromy_spec({"word": word}))
    return assemble(os, drilled_set(os))


def test_lr_counts(lr_triangulation: VeeringTriangulation) -> None:
    assert lr_triangulation.num_tetrahedra == 2
    assert lr_triangulation.num_edges == 2
    assert lr_triangulation.num_faces == 4


def test_llr_counts() -> None:
    tri = _assemble("LLR")
    assert (tri.num_tetrahedra, tri.num_edges) == (3, 3)


def test_lr_passes_every_check(lr_triangulation: VeeringTriangulation) -> None:
    report = verify_veering(lr_triangulation)
    assert report.passed, report.to_dict()
    assert set(report.checks) == {
        "gluing_involution",
        "edge_classes",
        "taut",
        "angle_sum",
        "transverse_taut",
        "veering",
    }


def test_edge_degrees_sum_to_six_per_tetrahedron(lr_triangulation: VeeringTriangulation) -> None:
    degrees = edge_degrees(lr_triangulation)
    assert all(d["pi"] == 2 for d in degrees)
    assert sum(d["incidences"] for d in degrees) == 6 * lr_triangulation.num_tetrahedra


def test_color_fault_is_reported(lr_triangulation: VeeringTriangulation) -> None:
    old = lr_triangulation.edge_colors[0]
    broken = lr_triangulation.with_edge_color(0, RED if old == BLUE else BLUE)
    report = verify_veering(broken)
    assert not report.checks["veering"].passed
    assert report.checks["veering"].violations[0].witness in range(2)
    assert report.checks["taut"].passed


def test_missing_pi_label_is_reported(lr_triangulation: VeeringTriangulation) -> None:
    tet = lr_triangulation.tetrahedra[1]
    angles = tuple(ZERO if a == PI and i == 1 else a for i, a in enumerate(tet.angles))
    broken = lr_triangulation.with_angles(1, angles)
    report = verify_veering(broken)
    assert not report.checks["taut"].passed
    assert report.checks["taut"].violations[0].witness == 1


def test_window_coverage_and_stability(lr_space: OrbitSpace, lr_triangulation: VeeringTriangulation) -> None:
    C = drilled_set(lr_space)
    w = Window(lr_space.q(-2), lr_space.q(2), lr_space.q(-2), lr_space.q(2))
    small = assemble(lr_space, C, w)
    large = assemble(lr_space, C, w.scaled(lr_space.lam))
    assert canonical_encoding(small) == canonical_encoding(large) == canonical_encoding(lr_triangulation)


def test_encoding_ignores_tetrahedron_numbering(lr_triangulation: VeeringTriangulation) -> None:
    tri = _assemble("LLR")
    rng = random.Random(11)
    order = list(range(tri.num_tetrahedra))
    rng.shuffle(order)
    new_id = {old: new for new, old in enumerate(order)}
    shuffled = VeeringTriangulation(
        tetrahedra=[tri.tetrahedra[old] for old in order],
        gluings=[
            [Gluing(new_id[g.partner], g.partner_face, g.perm) for g in tri.gluings[old]]
            for old in order
        ],
        edge_colors=list(tri.edge_colors),
        coorientations=[tri.coorientations[old] for old in order],
    )
    assert verify_veering(shuffled).passed
    assert canonical_encoding(shuffled) == canonical_encoding(tri)


def test_conjugate_words_share_an_encoding(lr_triangulation: VeeringTriangulation) -> None:
    assert canonical_encoding(_assemble("RL")) == canonical_encoding(lr_triangulation)


def test_different_words_differ(lr_triangulation: VeeringTriangulation) -> None:
    assert canonical_encoding(_assemble("LLR")) != canonical_encoding(lr_triangulation)


def test_json_round_trip(lr_triangulation: VeeringTriangulation) -> None:
    payload = json.loads(dump_document(triangulation_to_dict(lr_triangulation)))
    assert payload["schema_version"] == "1.0"
    back = triangulation_from_dict(payload)
    assert canonical_encoding(back) == canonical_encoding(lr_triangulation)
    assert back.tetrahedra[0].vertex_points == lr_triangulation.tetrahedra[0].vertex_points


def test_unknown_schema_major_is_refused(lr_triangulation: VeeringTriangulation) -> None:
    payload = triangulation_to_dict(lr_triangulation)
    payload["schema_version"] = "2.0"
    with pytest.raises(SchemaVersionError):
        triangulation_from_dict(payload)
