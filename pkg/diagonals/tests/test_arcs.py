"""Tests for PL arcs and their exact intersections."""

from fractions import Fraction

import pytest

from core.errors import InvalidInputError
from diagonals.arcs import NotTransverse, PLArc, arc_intersection, interior_overlap
from exactfield.quadnum import QuadNum


def _q(x) -> QuadNum:
    return QuadNum.rational(Fraction(x), 5)


def _pt(s, u):
    return (_q(s), _q(u))


def _arc(*pts) -> PLArc:
    return PLArc(tuple(_pt(*p) for p in pts))


def test_rejects_non_transverse_nodes() -> None:
    with pytest.raises(NotTransverse):
        _arc((0, 0))
    with pytest.raises(NotTransverse):
        _arc((1, 0), (0, 1))
    with pytest.raises(NotTransverse):
        _arc((0, 0), (1, 0))
    with pytest.raises(NotTransverse):
        _arc((0, 0), (1, 1), (2, 0))


def test_from_points_sorts_and_collapses_repeats() -> None:
    arc = PLArc.from_points([_pt(2, 3), _pt(0, 0), _pt(1, 1), _pt(0, 0)])
    assert arc.nodes == (_pt(0, 0), _pt(1, 1), _pt(2, 3))
    assert arc.sign == 1
    assert _arc((0, 4), (1, 2)).sign == -1


def test_evaluation_and_segment_lookup() -> None:
    arc = _arc((0, 0), (1, 1), (3, 5))
    assert arc.segment_index(_q(0)) == 0
    assert arc.segment_index(_q(1)) == 1
    assert arc.segment_index(_q(3)) == 1
    assert arc.value_at(_q(Fraction(1, 2))) == _q(Fraction(1, 2))
    assert arc.value_at(_q(2)) == _q(3)
    assert arc.contains(_pt(2, 3))
    assert not arc.contains(_pt(2, 4))
    assert not arc.contains(_pt(4, 7))
    assert arc.contains_interior(_pt(1, 1))
    assert not arc.contains_interior(_pt(0, 0))
    with pytest.raises(InvalidInputError):
        arc.segment_index(_q(-1))


def test_flank_slopes() -> None:
    arc = _arc((0, 0), (1, 1), (3, 5))
    assert arc.slope_west_of(_pt(0, 0)) is None
    assert arc.slope_east_of(_pt(3, 5)) is None
    assert arc.slope_west_of(_pt(1, 1)) == _q(1)
    assert arc.slope_east_of(_pt(1, 1)) == _q(2)
    assert arc.slope_west_of(_pt(2, 3)) == _q(2)
    assert arc.min_abs_slope() == _q(1)
    assert arc.max_abs_slope() == _q(2)


def test_convexity_ignores_collinear_nodes() -> None:
    assert _arc((0, 0), (1, 1), (2, 3)).is_convex()
    assert _arc((0, 0), (1, 1), (2, 2), (3, 4), (4, 7)).is_convex()
    assert not _arc((0, 0), (1, 2), (2, 3), (3, 5)).is_convex()
    arc = _arc((0, 0), (1, 1), (2, 2), (3, 4))
    assert arc.turn_flags() == [False, True]
    assert arc.turns() == [_pt(2, 2)]


def test_insert_node_keeps_the_geometry() -> None:
    arc = _arc((0, 0), (2, 2), (3, 4))
    refined = arc.insert_node(_pt(1, 1))
    assert refined.nodes == (_pt(0, 0), _pt(1, 1), _pt(2, 2), _pt(3, 4))
    assert refined.value_at(_q(Fraction(5, 2))) == arc.value_at(_q(Fraction(5, 2)))
    assert refined.insert_node(_pt(1, 1)) is refined
    with pytest.raises(InvalidInputError):
        arc.insert_node(_pt(1, 2))
    assert arc.point_on_segment(1, Fraction(1, 2)) == _pt(Fraction(5, 2), 3)


def test_crossing_arcs_meet_in_one_exact_point() -> None:
    a = _arc((0, 0), (3, 1))
    b = _arc((0, 0), (1, 3))
    c = _arc((1, 0), (2, 3))
    comps = arc_intersection(a, c)
    assert len(comps) == 1
    assert comps[0].is_point
    # c: u = 3s - 3, a: u = s/3
    assert comps[0].lo == _pt(Fraction(9, 8), Fraction(3, 8))
    assert [comp.lo for comp in arc_intersection(a, b)] == [_pt(0, 0)]
    assert interior_overlap(a, b) == []


def test_shared_segment_is_one_component() -> None:
    a = _arc((0, 0), (1, 1), (2, 2), (3, 5))
    b = _arc((Fraction(1, 2), Fraction(1, 2)), (2, 2), (3, 3))
    comps = arc_intersection(a, b)
    assert len(comps) == 1
    assert comps[0].lo == _pt(Fraction(1, 2), Fraction(1, 2))
    assert comps[0].hi == _pt(2, 2)
    assert not comps[0].is_point


def test_disjoint_and_separated_ranges() -> None:
    assert arc_intersection(_arc((0, 0), (1, 1)), _arc((0, 2), (1, 3))) == []
    assert arc_intersection(_arc((0, 0), (1, 1)), _arc((2, 2), (3, 3))) == []


def test_two_crossings_give_two_components() -> None:
    a = _arc((0, 0), (4, 4))
    b = _arc((0, Fraction(1, 2)), (2, 1), (4, 5))
    comps = arc_intersection(a, b)
    assert len(comps) == 2
    assert all(comp.is_point for comp in comps)
    assert len(interior_overlap(a, b)) == 2


def test_round_trip_payload() -> None:
    arc = _arc((0, 0), (1, 1), (3, 5))
    assert PLArc.from_dict(arc.to_dict()) == arc
    with pytest.raises(InvalidInputError):
        PLArc.from_dict({"nodes": "nope"})
