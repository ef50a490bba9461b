"""Tests for tetrahedron rectangles and staircases on the LR example."""

from fractions import Fraction

import pytest

from orbitspace.points import PointOrbitSet
from orbitspace.space import OrbitSpace, Window
from rectangles.enumerate import enumerate_edge_rects
from rectangles.models import BLUE, RED, EdgeRect, NotInC
from rectangles.order import is_chain, lies_above
from rectangles.staircase import check_recurrence, staircase
from rectangles.tetra import (
    adjacent_tetra,
    enumerate_tetra_rects,
    tetra_above,
    tetra_below,
    verify_tetra_rect,
)


@pytest.fixture
def unit_edge(lr_space: OrbitSpace) -> EdgeRect:
    return EdgeRect.from_corners(lr_space.to_eigen((0, 0)), lr_space.to_eigen((1, 0)))


def test_tetra_above_unit_edge(lr_space: OrbitSpace, lr_drilled: PointOrbitSet, unit_edge: EdgeRect) -> None:
    T = tetra_above(lr_space, lr_drilled, unit_edge)
    assert T.north == lr_space.to_eigen((1, -1))
    assert T.south == lr_space.to_eigen((0, 1))
    assert T.bottom_edge() == unit_edge
    assert T.top_edge().color == BLUE
    assert lies_above(T.top_edge(), T.bottom_edge())
    assert verify_tetra_rect(lr_space, lr_drilled, T) == []


def test_tetra_below_has_edge_on_top(lr_space: OrbitSpace, lr_drilled: PointOrbitSet, unit_edge: EdgeRect) -> None:
    T = tetra_below(lr_space, lr_drilled, unit_edge)
    assert T.top_edge() == unit_edge
    assert verify_tetra_rect(lr_space, lr_drilled, T) == []


def test_subrectangle_counts_and_face_colors(lr_space: OrbitSpace, lr_drilled: PointOrbitSet, unit_edge: EdgeRect) -> None:
    T = tetra_above(lr_space, lr_drilled, unit_edge)
    assert len(set(T.edge_subrects())) == 6
    assert len(set(T.face_subrects())) == 4
    for i in range(4):
        pts = T.face_points(i)
        colors = sorted(
            EdgeRect.from_corners(pts[a], pts[b]).color for a, b in ((0, 1), (0, 2), (1, 2))
        )
        assert colors in ([BLUE, BLUE, RED], [BLUE, RED, RED])


def test_adjacency_is_an_involution(lr_space: OrbitSpace, lr_drilled: PointOrbitSet, unit_edge: EdgeRect) -> None:
    T = tetra_above(lr_space, lr_drilled, unit_edge)
    for i in range(4):
        other = adjacent_tetra(lr_space, lr_drilled, T, i)
        assert other != T
        assert set(T.face_points(i)) <= set(other.points)
        j = next(b for b in range(4) if other.points[b] not in T.points)
        assert adjacent_tetra(lr_space, lr_drilled, other, j) == T
        assert verify_tetra_rect(lr_space, lr_drilled, other) == []


def test_enumerated_tetra_rects_are_valid(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    w = Window(lr_space.q(-3), lr_space.q(3), lr_space.q(-3), lr_space.q(3))
    tetras = enumerate_tetra_rects(lr_space, lr_drilled, w)
    edges = set(enumerate_edge_rects(lr_space, lr_drilled, w))
    assert tetras
    for T in tetras:
        assert w.contains_all(T.points)
        assert T.bottom_edge() in edges
        assert T.top_edge() in edges
        assert lies_above(T.top_edge(), T.bottom_edge())


def test_staircase_at_origin(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    origin = lr_space.to_eigen((0, 0))
    st = staircase(lr_space, lr_drilled, origin, "I", 4)
    assert len(st) == 4
    assert st.far_corners()[:3] == [
        lr_space.to_eigen((1, 0)),
        lr_space.to_eigen((1, -1)),
        lr_space.to_eigen((2, -3)),
    ]
    assert st.shift == 1
    assert check_recurrence(lr_space, st) == []
    assert all(e.has_corner(origin) for e in st.elements)
    assert is_chain(st.elements)
    widths = [e.rect.width for e in st.elements]
    heights = [e.rect.height for e in st.elements]
    assert all(a > b for a, b in zip(widths, widths[1:]))
    assert all(a < b for a, b in zip(heights, heights[1:]))


@pytest.mark.parametrize("quadrant", ["I", "II", "III", "IV"])
def test_staircase_recurrence_in_every_quadrant(lr_space: OrbitSpace, lr_drilled: PointOrbitSet, quadrant: str) -> None:
    st = staircase(lr_space, lr_drilled, lr_space.to_eigen((0, 0)), quadrant, 5)
    assert check_recurrence(lr_space, st) == []
    assert is_chain(st.elements)


def test_staircase_base_must_be_a_lift(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    with pytest.raises(NotInC):
        staircase(lr_space, lr_drilled, lr_space.to_eigen((Fraction(1, 2), 0)), "I", 2)


def test_staircase_elements_are_edge_rects_of_the_window(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    st = staircase(lr_space, lr_drilled, lr_space.to_eigen((0, 0)), "II", 2)
    w = Window(lr_space.q(-2), lr_space.q(2), lr_space.q(-5), lr_space.q(5))
    edges = set(enumerate_edge_rects(lr_space, lr_drilled, w))
    assert set(st.elements) <= edges
