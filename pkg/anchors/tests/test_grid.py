"""Tests for the grid maps used to place pinched families."""

import math
from fractions import Fraction

import pytest

from anchors.grid import (
    fundamental_widths,
    grid_maps,
    preserving_offset,
    reversing_offset,
    scale_exponent,
    staircase_index,
)
from anchors.pinched import snap_near, strictly_ordered
from core.errors import InvalidInputError
from exactfield.quadnum import qn_to_float
from orbitspace.space import OrbitSpace, point_to_float

RANGE = range(-3, 4)


@pytest.mark.parametrize("m0,n0", [(1, 1), (2, 3), (3, 1)])
def test_increasing_n_is_thinner_and_shorter(lr_space: OrbitSpace, m0: int, n0: int) -> None:
    for m in RANGE:
        for n in RANGE:
            a = grid_maps(m0, n0, (m, n), lr_space.lam)
            b = grid_maps(m0, n0, (m, n + 1), lr_space.lam)
            assert a.x < b.x
            assert abs(a.y) < abs(b.y)


@pytest.mark.parametrize("m0,n0", [(1, 1), (2, 3), (3, 1)])
def test_increasing_m_is_wider_and_taller(lr_space: OrbitSpace, m0: int, n0: int) -> None:
    for m in RANGE:
        for n in RANGE:
            a = grid_maps(m0, n0, (m, n), lr_space.lam)
            b = grid_maps(m0, n0, (m + 1, n), lr_space.lam)
            assert a.x > b.x
            assert abs(a.y) > abs(b.y)


def test_period_shift_scales_by_lambda(llr_space: OrbitSpace) -> None:
    Lam = llr_space.lam
    lam = qn_to_float(Lam)
    for m in RANGE:
        for n in RANGE:
            a = grid_maps(2, 3, (m, n), Lam)
            b = grid_maps(2, 3, (m + 2, n + 3), Lam)
            assert b.x == pytest.approx(a.x / lam, rel=1e-12)
            assert b.y == pytest.approx(a.y * lam, rel=1e-12)


def test_integer_exponents_are_exact(lr_space: OrbitSpace) -> None:
    g = grid_maps(1, 1, (1, 1), lr_space.lam)
    assert g.exact == (lr_space.lam ** -1, -lr_space.lam)
    assert g.x == pytest.approx(qn_to_float(g.exact[0]))
    assert grid_maps(2, 1, (1, 0), lr_space.lam).exact is None


def test_grid_periods_must_be_positive(lr_space: OrbitSpace) -> None:
    with pytest.raises(InvalidInputError):
        grid_maps(0, 1, (0, 0), lr_space.lam)


def test_staircase_index_shifts_by_period(lr_space: OrbitSpace) -> None:
    lam = lr_space.lam
    one = lr_space.q(1)
    assert scale_exponent(one, lam) == 0
    assert staircase_index(one, lam, 3, 0) == 0
    assert staircase_index(one / lam, lam, 3, 0) == 3
    assert staircase_index(one * lam, lam, 3, 2) == -1
    assert staircase_index(lr_space.q(Fraction(3, 2)) / lam ** 2, lam, 3, 1) == 7


def test_fundamental_widths_are_distinct_and_widest_first(lr_space: OrbitSpace) -> None:
    lam = lr_space.lam
    one = lr_space.q(1)
    half3 = lr_space.q(Fraction(3, 2))
    assert fundamental_widths([one, lam, lam ** 2, half3 / lam], lam) == [half3, one]


def test_preserving_offsets_land_off_the_corner_quadrants(lr_space: OrbitSpace) -> None:
    for m in RANGE:
        for n in RANGE:
            rx, ry = preserving_offset(2, 2, (m, n), lr_space.lam, red=True)
            bx, by = preserving_offset(2, 2, (m, n), lr_space.lam, red=False)
            assert rx < 0 < ry
            assert bx > 0 and by > 0


def test_preserving_offsets_are_strictly_monotone(lr_space: OrbitSpace) -> None:
    far = 1e6
    for m in RANGE:
        for n in RANGE:
            here = preserving_offset(2, 3, (m, n), lr_space.lam, red=True)
            up_n = preserving_offset(2, 3, (m, n + 1), lr_space.lam, red=True)
            up_m = preserving_offset(2, 3, (m + 1, n), lr_space.lam, red=True)
            # Red members share an m corner to the south-west and an n corner to the north-east.
            assert strictly_ordered((-far, -far), here, up_n)
            assert strictly_ordered((far, far), here, up_m)


def test_reversing_offsets_follow_the_stabilizer(llr_space: OrbitSpace) -> None:
    lam_p = llr_space.lam_float
    Lam2 = llr_space.lam ** 2
    r = 2
    for m in RANGE:
        for n in RANGE:
            ox, oy = reversing_offset(r, (m, n), Lam2, lam_p, red=True)
            gx, gy = reversing_offset(r, (n, m + r), Lam2, lam_p, red=True)
            assert gx == pytest.approx(-ox / lam_p, rel=1e-12)
            assert gy == pytest.approx(-oy * lam_p, rel=1e-12)


def test_snap_near_returns_close_lattice_rational_point(lr_space: OrbitSpace) -> None:
    base = (Fraction(1, 2), Fraction(0))
    p = snap_near(lr_space, base, 1e-3, -2e-3, lambda q: True)
    assert p is not None
    assert lr_space.is_lattice_rational(p)
    fp = point_to_float(p)
    fc = point_to_float(lr_space.to_eigen(base))
    assert math.isclose(fp[0] - fc[0], 1e-3, rel_tol=1e-5)
    assert math.isclose(fp[1] - fc[1], -2e-3, rel_tol=1e-5)


def test_snap_near_gives_up_when_nothing_is_accepted(lr_space: OrbitSpace) -> None:
    assert snap_near(lr_space, (Fraction(0), Fraction(0)), 1e-2, 1e-2, lambda q: False) is None
