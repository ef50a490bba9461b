"""Tests for the slope, crossing and face-embeddedness criteria."""

from fractions import Fraction

import pytest

from diagonals.arcs import PLArc
from diagonals.system import DiagonalLift, DiagonalSystem, straight_diagonals
from orbitspace.points import PointOrbitSet, drilled_set
from orbitspace.space import OrbitSpace, Window
from perturb.criteria import (
    check_crossing,
    check_face_embeddedness,
    check_slope_criterion,
    crossing_point,
    slope_failure,
)
from perturb.heights import flank_heights, height_bound
from rectangles.enumerate import enumerate_edge_rects
from rectangles.models import EdgeRect
from rectangles.order import lies_above
from rectangles.tetra import enumerate_tetra_rects


def _wide_window(os: OrbitSpace) -> Window:
    return Window(os.q(-3), os.q(3), os.q(-3), os.q(3))


def _shifted(w: Window, os: OrbitSpace) -> Window:
    # translation by the lattice vector (1, 0), which is (1, 1) in eigen coordinates
    one = os.q(1)
    return Window(w.s_lo + one, w.s_hi + one, w.u_lo + one, w.u_hi + one)


@pytest.fixture(scope="module")
def lr_straight(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> DiagonalSystem:
    return straight_diagonals(lr_space, lr_drilled, _wide_window(lr_space))


def test_straight_diagonals_pass_the_slope_criterion(lr_space: OrbitSpace, lr_straight: DiagonalSystem) -> None:
    report = check_slope_criterion(lr_straight, _wide_window(lr_space))
    assert report.checked_pairs > 0
    assert report.passed, [v.to_dict() for v in report.violations]


def test_straight_diagonals_pass_the_crossing_criterion(lr_space: OrbitSpace, lr_straight: DiagonalSystem) -> None:
    slope = check_slope_criterion(lr_straight, _wide_window(lr_space))
    crossing = check_crossing(lr_straight, _wide_window(lr_space))
    assert crossing.passed, [v.to_dict() for v in crossing.violations]
    assert crossing.checked_pairs == slope.checked_pairs


def test_straight_diagonals_embed_every_face(
    lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_straight: DiagonalSystem
) -> None:
    tetras = enumerate_tetra_rects(lr_space, lr_drilled, _wide_window(lr_space))
    assert tetras
    report = check_face_embeddedness(lr_straight, tetras)
    assert report.checked_pairs == 12 * len(tetras)
    assert report.passed, [v.to_dict() for v in report.violations]


def test_top_edge_lies_above_the_bottom_edge(
    lr_space: OrbitSpace, lr_drilled: PointOrbitSet, lr_straight: DiagonalSystem
) -> None:
    for T in enumerate_tetra_rects(lr_space, lr_drilled, _wide_window(lr_space)):
        bottom, top = lr_straight.lift(T.bottom_edge()), lr_straight.lift(T.top_edge())
        assert lies_above(top.rect, bottom.rect)
        p, _ = crossing_point(bottom, top)
        assert p is not None
        for h1, h2 in zip(flank_heights(lr_space, bottom, p), flank_heights(lr_space, top, p)):
            assert h1 < h2


def test_verdicts_survive_a_deck_translation(lr_space: OrbitSpace, lr_straight: DiagonalSystem) -> None:
    w = _wide_window(lr_space)
    for check in (check_slope_criterion, check_crossing):
        here, there = check(lr_straight, w), check(lr_straight, _shifted(w, lr_space))
        assert here.checked_pairs == there.checked_pairs > 0
        assert here.passed == there.passed


@pytest.mark.slow
@pytest.mark.parametrize(("word", "radius"), [("LR", 5), ("LLR", 7), ("LLRR", 6)])
def test_straight_criteria_hold_on_large_windows(request: pytest.FixtureRequest, word: str, radius: int) -> None:
    os = request.getfixturevalue(f"{word.lower()}_space")
    C = drilled_set(os)
    w = Window(os.q(-radius), os.q(radius), os.q(-radius), os.q(radius))
    assert len(enumerate_edge_rects(os, C, w)) >= 200
    system = straight_diagonals(os, C, w)
    N = height_bound(system)
    for report in (check_slope_criterion(system, w, N), check_crossing(system, w, N)):
        assert report.checked_pairs > 0
        assert report.passed, [v.to_dict() for v in report.violations[:5]]
    faces = check_face_embeddedness(system, enumerate_tetra_rects(os, C, w))
    assert faces.checked_pairs > 0
    assert faces.passed, [v.to_dict() for v in faces.violations[:5]]


def _lift(os: OrbitSpace, oid: str, *pts) -> DiagonalLift:
    nodes = [(os.q(Fraction(s)), os.q(Fraction(u))) for s, u in pts]
    return DiagonalLift(oid, EdgeRect.from_corners(nodes[0], nodes[-1]), PLArc.from_points(nodes), os.lattice_map(0, (0, 0)))


def test_slope_failure_reports_the_crossing(lr_space: OrbitSpace) -> None:
    lower = _lift(lr_space, "lo", (0, 3), (Fraction(24, 5), 4), (Fraction(26, 5), 6), (10, 7))
    upper = _lift(lr_space, "up", (4, 10), (6, 0))
    check, witness, detail = slope_failure(lower, upper)
    assert check == "slope_inequality"
    assert witness["slopes"] == {"lower": [5.0, 5.0], "upper": [-5.0, -5.0]}
    assert detail == "red/blue"


def test_overlapping_pair_is_not_a_single_point(lr_space: OrbitSpace) -> None:
    lower = _lift(lr_space, "lo", (0, 3), (4, 4), (6, 6), (10, 7))
    upper = _lift(lr_space, "up", (2, 1), (4, 4), (6, 6), (8, 9))
    check, _, detail = slope_failure(lower, upper)
    assert check == "not_single_point"
    assert detail == "1 components"
