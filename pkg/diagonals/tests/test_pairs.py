"""Tests for anchor subrectangles, pair types and buoy rectangles.

The rectangles here are hand-placed red rectangles ``R1 < R2``: ``R1`` is
``[0, 10] x [1, 3]`` and ``R2`` is ``[4, 8] x [0, 4]``.
"""

from fractions import Fraction

import pytest

from core.errors import InvalidInputError
from diagonals.pairs import EmptyIntersection, classify_pair, half_rect, q_rects
from diagonals.tight import SlitConfig, tight_arc
from exactfield.quadnum import QuadNum
from rectangles.models import EdgeRect, Rect
from rectangles.order import lies_above


def _q(x) -> QuadNum:
    return QuadNum.rational(Fraction(x), 5)


def _pt(s, u):
    return (_q(s), _q(u))


R1 = EdgeRect.from_corners(_pt(0, 1), _pt(10, 3))
R2 = EdgeRect.from_corners(_pt(4, 0), _pt(8, 4))


def _west_halves(a1, a2):
    return half_rect(R1, _pt(*a1), 0), half_rect(R2, _pt(*a2), 0)


def test_fixture_rects_are_ordered() -> None:
    assert R1.color == R2.color
    assert lies_above(R2, R1)


def test_half_rect_validation() -> None:
    with pytest.raises(InvalidInputError):
        half_rect(R1, _pt(5, 2), 2)
    with pytest.raises(InvalidInputError):
        half_rect(R1, _pt(5, 3), 0)
    p = half_rect(R1, _pt(5, 2), 1)
    assert p.corner == _pt(10, 3)
    assert p.hook == _pt(5, 3)
    assert p.far == _pt(10, 2)


def test_side_overlap_is_type_zero() -> None:
    wide = EdgeRect.from_corners(_pt(0, 0), _pt(4, 2))
    tall = EdgeRect.from_corners(_pt(0, 0), _pt(2, 4))
    p1, p2 = half_rect(wide, _pt(2, 1), 0), half_rect(tall, _pt(1, 2), 0)
    assert classify_pair(p1, p2) == "0"
    assert q_rects(p1, p2) == []


def test_disjoint_subrectangles_are_rejected() -> None:
    p1, p2 = _west_halves((2, 2), (6, 2))
    with pytest.raises(InvalidInputError):
        classify_pair(p1, p2)


def test_type_i_1_buoy_goes_between_the_hooks() -> None:
    p1, p2 = _west_halves((5, Fraction(5, 2)), (6, 2))
    assert classify_pair(p1, p2) == "I-1"
    (target,) = q_rects(p1, p2)
    assert target.owner == 2
    assert target.rect == Rect.spanned(p1.hook, p2.hook)
    assert target.rect == Rect(_q(5), _q(6), _q(0), _q(1))


def test_type_i_1_buoy_bends_the_owner_half() -> None:
    p1, p2 = _west_halves((5, Fraction(5, 2)), (6, 2))
    (target,) = q_rects(p1, p2)
    buoy = target.rect.center()
    bent = tight_arc(SlitConfig(p2.rect, (p2.corner, p2.anchor), (buoy,)))
    assert buoy in bent.nodes
    assert p1.rect.intersection(p2.rect) is not None


def test_type_i_2_when_the_anchor_sits_in_the_other_half() -> None:
    p1, p2 = _west_halves((5, Fraction(3, 2)), (6, 2))
    assert classify_pair(p1, p2) == "I-2"
    (target,) = q_rects(p1, p2)
    assert target.owner == 2
    assert target.kind == "I-2"


def test_type_ii_1_buoy_is_owned_by_the_lower_rect() -> None:
    p1, p2 = _west_halves((7, Fraction(5, 2)), (6, 2))
    assert classify_pair(p1, p2) == "II-1"
    (target,) = q_rects(p1, p2)
    assert target.owner == 1
    assert target.rect == Rect(_q(6), _q(7), _q(1), _q(2))


def test_hooks_on_one_leaf_leave_no_room() -> None:
    p1, p2 = _west_halves((6, Fraction(5, 2)), (6, 2))
    with pytest.raises(EmptyIntersection):
        q_rects(p1, p2, "I-1")
