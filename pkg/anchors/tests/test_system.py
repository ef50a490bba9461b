"""Tests for anchor-system construction and verification."""

from fractions import Fraction

import pytest

from anchors.system import AnchorSystem, MissingAnchor, build_anchor_system, verify_anchor_system
from core.run_artifacts import dump_document
from orbitspace.normal_form import apply_lattice_map, normalize_points
from orbitspace.points import PointOrbitSet, puncture_set
from orbitspace.space import OrbitSpace, Window
from rectangles.core_points import ABOVE, CoreSolver
from rectangles.enumerate import enumerate_edge_rects
from rectangles.models import EdgeRect


def _window(os: OrbitSpace) -> Window:
    return Window(os.q(Fraction(-3, 2)), os.q(Fraction(3, 2)), os.q(Fraction(-3, 2)), os.q(Fraction(3, 2)))


def _wide_window(os: OrbitSpace) -> Window:
    return Window(os.q(-3), os.q(3), os.q(-3), os.q(3))


@pytest.fixture(scope="module")
def lr_anchors(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> AnchorSystem:
    return build_anchor_system(lr_space, lr_drilled, _window(lr_space))


def test_core_anchors_pass_verification(
    lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_anchors: AnchorSystem
) -> None:
    report = verify_anchor_system(lr_anchors, lr_space, lr_drilled, _window(lr_space))
    assert report.passed, [v.to_dict() for v in report.violations]
    assert report.checked_pairs > 0
    assert lr_anchors.source_counts()["pinched"] == 0
    assert not lr_anchors.families


def test_anchor_is_the_core_for_unpinched_rects(
    lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_anchors: AnchorSystem
) -> None:
    solver = CoreSolver(lr_space, lr_drilled)
    for e in enumerate_edge_rects(lr_space, lr_drilled, _window(lr_space)):
        assert lr_anchors.anchor(e) == solver.core_of(e)[0]


def test_anchors_are_equivariant(
    lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_anchors: AnchorSystem
) -> None:
    deck = [lr_space.lattice_map(1, (0, 0)), lr_space.lattice_map(-1, (1, 0)), lr_space.lattice_map(0, (2, -1))]
    for e in enumerate_edge_rects(lr_space, lr_drilled, _window(lr_space))[:5]:
        for g in deck:
            moved = e.mapped(lr_space, g)
            assert lr_anchors.anchor(moved) == apply_lattice_map(lr_space, g, lr_anchors.anchor(e))


def test_blocked_core_is_shifted(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    # The unit edge at the origin has its core at lattice point (1/2, 0).
    avoid = puncture_set(lr_space, [(Fraction(1, 2), Fraction(0))])
    w = _window(lr_space)
    system = build_anchor_system(lr_space, lr_drilled, w, avoid=avoid)
    unit = EdgeRect.from_corners(lr_space.to_eigen((0, 0)), lr_space.to_eigen((1, 0)))
    anchor = system.anchor(unit)
    assert system.source_counts()["shifted"] >= 1
    assert anchor != unit.rect.center()
    assert unit.rect.contains_open(anchor)
    assert not avoid.contains(lr_space, anchor)
    report = verify_anchor_system(system, lr_space, lr_drilled, w, avoid=avoid)
    assert report.passed, [v.to_dict() for v in report.violations]


def test_equal_anchors_on_a_corner_sharing_pair_are_reported(
    lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_anchors: AnchorSystem
) -> None:
    solver = CoreSolver(lr_space, lr_drilled)
    # resolves every orbit the wide window touches before the copy below
    clean = verify_anchor_system(lr_anchors, lr_space, lr_drilled, _wide_window(lr_space), solver=solver)
    assert clean.passed and clean.checked_pairs > 0
    pair = None
    for e in enumerate_edge_rects(lr_space, lr_drilled, _wide_window(lr_space)):
        key = normalize_points(lr_space, e.corners)[0]
        for nb in solver.neighbours(e):
            if nb.direction == ABOVE and normalize_points(lr_space, nb.rect.corners)[0] != key:
                pair = (e, nb.rect)
                break
        if pair:
            break
    assert pair is not None
    lower, upper = pair
    broken = lr_anchors.with_anchor(upper, lr_anchors.anchor(lower))
    report = verify_anchor_system(broken, lr_space, lr_drilled, _wide_window(lr_space))
    assert not report.passed
    assert any(v.check == "strict_monotonicity" for v in report.violations)


def test_anchor_table_round_trip(lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_anchors: AnchorSystem) -> None:
    payload = lr_anchors.to_dict()
    assert len(payload["anchors"]) == len(lr_anchors)
    assert all(oid.startswith("E") for oid in payload["anchors"])
    assert dump_document(payload)
    restored = AnchorSystem.from_dict(lr_space, payload)
    for e in enumerate_edge_rects(lr_space, lr_drilled, _window(lr_space)):
        assert restored.anchor(e) == lr_anchors.anchor(e)


def test_empty_system_has_no_anchor(lr_space: OrbitSpace) -> None:
    unit = EdgeRect.from_corners(lr_space.to_eigen((0, 0)), lr_space.to_eigen((1, 0)))
    with pytest.raises(MissingAnchor):
        AnchorSystem(lr_space).anchor(unit)
