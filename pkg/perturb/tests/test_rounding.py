"""Tests for corner rounding."""

from fractions import Fraction

import pytest

from anchors.system import build_anchor_system
from core.errors import InvalidInputError
from diagonals.arcs import PLArc
from diagonals.system import DiagonalLift, build_pl_diagonals, straight_diagonals
from orbitspace.points import PointOrbitSet
from orbitspace.space import OrbitSpace, Window
from perturb.rounding import arc_meets_rect, neighborhood_clash, round_arc, round_corners
from rectangles.models import EdgeRect, Rect


def _window(os: OrbitSpace) -> Window:
    return Window(os.q(Fraction(-3, 2)), os.q(Fraction(3, 2)), os.q(Fraction(-3, 2)), os.q(Fraction(3, 2)))


def _arc(os: OrbitSpace, *pts) -> PLArc:
    return PLArc.from_points([(os.q(Fraction(s)), os.q(Fraction(u))) for s, u in pts])


def _lift(os: OrbitSpace, oid: str, *pts) -> DiagonalLift:
    arc = _arc(os, *pts)
    return DiagonalLift(oid, EdgeRect.from_corners(arc.west, arc.east), arc, os.lattice_map(0, (0, 0)))


def test_turn_is_replaced_by_increasing_slopes(lr_space: OrbitSpace) -> None:
    arc = _arc(lr_space, (0, 0), (1, 1), (2, 4))
    rounded = round_arc(arc, Fraction(1, 4), 4)
    assert rounded.slopes() == [1, Fraction(5, 4), Fraction(7, 4), Fraction(9, 4), Fraction(11, 4), 3]
    assert rounded.endpoints == arc.endpoints
    assert rounded.is_convex()


def test_straight_arc_is_unchanged(lr_space: OrbitSpace) -> None:
    arc = _arc(lr_space, (0, 0), (1, 2), (3, 6))
    assert round_arc(arc, Fraction(1, 4), 4) == arc


@pytest.mark.parametrize("t", [Fraction(0), Fraction(1, 2)])
def test_span_must_stay_inside_the_segments(lr_space: OrbitSpace, t: Fraction) -> None:
    with pytest.raises(InvalidInputError):
        round_arc(_arc(lr_space, (0, 0), (1, 1), (2, 4)), t, 4)


def test_anchored_diagonals_keep_extreme_slopes(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    w = _window(lr_space)
    system = build_pl_diagonals(lr_space, lr_drilled, build_anchor_system(lr_space, lr_drilled, w), None, w)
    for _, arc in system.arcs():
        rounded = round_arc(arc, Fraction(1, 8), 4)
        assert rounded.endpoints == arc.endpoints
        assert rounded.max_abs_slope() == arc.max_abs_slope()
        assert rounded.min_abs_slope() == arc.min_abs_slope()
        assert rounded.is_convex()
        assert len(rounded.nodes) == len(arc.nodes) + 4 * len(arc.turns())


def test_arc_meets_rect(lr_space: OrbitSpace) -> None:
    arc = _arc(lr_space, (0, 0), (2, 2))
    q = lr_space.q
    assert arc_meets_rect(arc, Rect(q(Fraction(1, 2)), q(1), q(0), q(Fraction(1, 2))))
    assert not arc_meets_rect(arc, Rect(q(1), q(2), q(0), q(Fraction(1, 2))))
    assert not arc_meets_rect(arc, Rect(q(3), q(4), q(0), q(5)))


def test_neighborhoods_shrink_away_from_a_passing_diagonal(lr_space: OrbitSpace) -> None:
    turning = _lift(lr_space, "x", (0, 0), (1, 1), (2, 4))
    passing = _lift(lr_space, "y", (0, Fraction(1, 5)), (2, Fraction(11, 5)))
    assert neighborhood_clash([turning, passing], Fraction(1, 4)) is not None
    assert neighborhood_clash([turning, passing], Fraction(1, 32)) is None


def test_round_corners_without_turns_is_identity(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    w = _window(lr_space)
    system = straight_diagonals(lr_space, lr_drilled, w)
    assert round_corners(system, 4, w) is system
