"""Tests for diagonal systems, node goals and the PL-goal verifier."""

from dataclasses import replace
from fractions import Fraction

import pytest

from anchors.system import AnchorSystem, build_anchor_system
from core.errors import InvalidInputError
from diagonals.arcs import PLArc
from diagonals.render import render_system
from diagonals.system import (
    DiagonalSystem,
    build_pl_diagonals,
    separate_adjacent_orbits,
    straight_diagonals,
)
from diagonals.verify import pair_failure, same_color_pairs, shares_corner, verify_plo
from orbitspace.points import PointOrbitSet
from orbitspace.space import OrbitSpace, Window
from rectangles.enumerate import enumerate_edge_rects
from rectangles.models import EdgeRect

PAIR_CHECKS = {"corner_pair_overlap", "overlap_disconnected", "slope_inequality"}


def _window(os: OrbitSpace) -> Window:
    return Window(os.q(Fraction(-3, 2)), os.q(Fraction(3, 2)), os.q(Fraction(-3, 2)), os.q(Fraction(3, 2)))


def _wide_window(os: OrbitSpace) -> Window:
    return Window(os.q(-3), os.q(3), os.q(-3), os.q(3))


def _unit_edge(os: OrbitSpace) -> EdgeRect:
    return EdgeRect.from_corners(os.to_eigen((0, 0)), os.to_eigen((1, 0)))


@pytest.fixture(scope="module")
def lr_anchors(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> AnchorSystem:
    return build_anchor_system(lr_space, lr_drilled, _window(lr_space))


@pytest.fixture(scope="module")
def lr_straight(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> DiagonalSystem:
    return straight_diagonals(lr_space, lr_drilled, _wide_window(lr_space))


@pytest.fixture(scope="module")
def lr_diagonals(lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_anchors: AnchorSystem) -> DiagonalSystem:
    return build_pl_diagonals(lr_space, lr_drilled, lr_anchors, None, _window(lr_space))


def test_straight_system_meets_the_pair_goals(lr_space: OrbitSpace, lr_straight: DiagonalSystem) -> None:
    report = verify_plo(lr_straight, _wide_window(lr_space))
    assert report.checked_pairs > 0
    assert not [v.to_dict() for v in report.violations if v.check in PAIR_CHECKS]


def test_every_orbit_in_the_window_gets_a_diagonal(
    lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_diagonals: DiagonalSystem
) -> None:
    for e in enumerate_edge_rects(lr_space, lr_drilled, _window(lr_space)):
        assert lr_diagonals.diagonal(e).endpoints == e.corners


def test_anchor_diagonal_turns_only_at_the_anchor(
    lr_diagonals: DiagonalSystem, lr_anchors: AnchorSystem
) -> None:
    for oid, arc in lr_diagonals.arcs():
        rep = lr_diagonals.entries[oid].rect
        anchor = lr_anchors.anchor(rep)
        assert arc.endpoints == rep.corners
        assert arc.is_node(anchor)
        assert set(arc.turns()) <= {anchor}


def test_unit_edge_diagonal_is_straight(lr_space: OrbitSpace, lr_diagonals: DiagonalSystem) -> None:
    # its anchor is the center, so both halves are collinear
    arc = lr_diagonals.diagonal(_unit_edge(lr_space))
    assert arc.turns() == []
    assert arc.contains(lr_space.to_eigen((Fraction(1, 2), 0)))


def test_endpoint_check_passes(lr_space: OrbitSpace, lr_diagonals: DiagonalSystem) -> None:
    report = verify_plo(lr_diagonals, _window(lr_space))
    assert report.name == "plo"
    assert not [v for v in report.violations if v.check == "diagonal_endpoints"]


def test_diagonals_are_equivariant(
    lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_diagonals: DiagonalSystem
) -> None:
    deck = [lr_space.lattice_map(1, (0, 0)), lr_space.lattice_map(-1, (1, 0)), lr_space.lattice_map(0, (2, -1))]
    for e in enumerate_edge_rects(lr_space, lr_drilled, _window(lr_space))[:5]:
        for g in deck:
            assert lr_diagonals.diagonal(e.mapped(lr_space, g)) == lr_diagonals.diagonal(e).mapped(lr_space, g)


def test_overlapping_corner_pair_is_reported(lr_space: OrbitSpace, lr_straight: DiagonalSystem) -> None:
    lifts = lr_straight.materialize(_wide_window(lr_space))
    pairs = [(lo, up) for lo, up in same_color_pairs(lifts) if shares_corner(lo, up)]
    assert pairs
    lower, upper = pairs[0]
    assert pair_failure(lower, upper) is None
    c = next(x for x in upper.rect.corners if lower.rect.has_corner(x))
    # run the upper diagonal along the lower one for a stretch next to the shared corner
    west = c == lower.arc.west
    i = 0 if west else len(lower.arc.nodes) - 2
    t = Fraction(1, 2)
    while True:
        p = lower.arc.point_on_segment(i, t if west else 1 - t)
        if upper.rect.rect.contains_open(p):
            break
        t /= 2
    bad = replace(upper, arc=PLArc.from_points([c, p, upper.rect.other_corner(c)]))
    failure = pair_failure(lower, bad)
    assert failure is not None
    assert failure[0] == "corner_pair_overlap"


def test_with_arc_rejects_wrong_endpoints(lr_space: OrbitSpace, lr_straight: DiagonalSystem) -> None:
    unit = _unit_edge(lr_space)
    mid = lr_space.to_eigen((Fraction(1, 2), 0))
    with pytest.raises(InvalidInputError):
        lr_straight.with_arc(unit, PLArc((unit.west, mid)))


def test_adjacent_nodes_in_one_orbit_are_split(lr_space: OrbitSpace, lr_straight: DiagonalSystem) -> None:
    unit = _unit_edge(lr_space)
    # (1/3, 0) and (2/3, 0) lie in one orbit of the monodromy mod Z^2
    third, two_thirds = lr_space.to_eigen((Fraction(1, 3), 0)), lr_space.to_eigen((Fraction(2, 3), 0))
    assert lr_space.same_orbit(third, two_thirds)
    crowded = lr_straight.with_arc(unit, PLArc.from_points([unit.west, third, two_thirds, unit.east]))
    fixed, inserted = separate_adjacent_orbits(crowded)
    assert inserted >= 1
    arc = fixed.diagonal(unit)
    assert arc.is_node(lr_space.to_eigen((Fraction(1, 2), 0)))
    assert not any(lr_space.same_orbit(a, b) for a, b in arc.segments())


def test_round_trip_payload(lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_diagonals: DiagonalSystem) -> None:
    payload = lr_diagonals.to_dict()
    assert len(payload["diagonals"]) == len(lr_diagonals)
    restored = DiagonalSystem.from_dict(lr_space, lr_drilled, payload)
    for e in enumerate_edge_rects(lr_space, lr_drilled, _window(lr_space)):
        assert restored.diagonal(e) == lr_diagonals.diagonal(e)


def test_height_bound_filters_lifts(lr_space: OrbitSpace, lr_diagonals: DiagonalSystem) -> None:
    w = _window(lr_space)
    every = lr_diagonals.materialize(w)
    level = lr_diagonals.materialize(w, height_bound=0)
    assert len(level) <= len(every)
    assert all(d.height == 0 for d in level)


def test_svg_draws_one_polyline_per_lift(lr_space: OrbitSpace, lr_diagonals: DiagonalSystem) -> None:
    w = _window(lr_space)
    svg = render_system(lr_diagonals, w)
    assert svg.startswith("<svg")
    assert svg.count("<polyline") == len(lr_diagonals.materialize(w))
