"""Tests for eigen-coordinates, deck elements and lift enumeration."""

import random
from fractions import Fraction

import pytest

from exactfield.quadnum import QuadNum
from orbitspace.points import (
    PunctureRejected,
    WindowTooLarge,
    drilled_set,
    enumerate_lifts,
    puncture_set,
)
from orbitspace.monodromy import LatticePoint
from orbitspace.space import OrbitSpace, Point, Window, transport


def _window(os: OrbitSpace, r: int) -> Window:
    return Window(os.q(-r), os.q(r), os.q(-r), os.q(r))


def _random_deck(os: OrbitSpace, rng: random.Random):
    return os.deck_element(rng.randint(-2, 2), (rng.randint(-3, 3), rng.randint(-3, 3)))


def brute_force_lifts(os: OrbitSpace, x: LatticePoint, w: Window, radius: int) -> list[Point]:
    """Every translate with ``|v| <= radius`` over one period of heights."""
    out: set[Point] = set()
    for coset in os.orbit_cosets(x):
        for n1 in range(-radius, radius + 1):
            for n2 in range(-radius, radius + 1):
                p = os.to_eigen((coset[0] + n1, coset[1] + n2))
                if w.contains(p):
                    out.add(p)
    return sorted(out)


def test_eigen_round_trip(lr_space: OrbitSpace) -> None:
    x = (Fraction(2, 3), Fraction(-5, 7))
    assert lr_space.to_lattice(lr_space.to_eigen(x)) == x


def test_matrix_acts_diagonally(lr_space: OrbitSpace) -> None:
    x = (Fraction(1, 3), Fraction(1, 4))
    g = lr_space.deck_element(1, (0, 0))
    ax = lr_space.lattice_map(1, (0, 0)).apply(x)
    assert transport(g, lr_space.to_eigen(x)) == lr_space.to_eigen(ax)


def test_identity_transport(lr_space: OrbitSpace) -> None:
    p = lr_space.to_eigen((Fraction(1, 2), Fraction(3)))
    assert transport(lr_space.identity(), p) == p
    assert lr_space.identity().is_identity()


def test_slope_scales_by_lambda_minus_two(lr_space: OrbitSpace) -> None:
    g = lr_space.deck_element(1, (0, 0))
    a = (lr_space.q(0), lr_space.q(0))
    b = (lr_space.q(1), lr_space.q(3))
    ga, gb = transport(g, a), transport(g, b)
    slope = (b[1] - a[1]) / (b[0] - a[0])
    new_slope = (gb[1] - ga[1]) / (gb[0] - ga[0])
    assert new_slope == slope * lr_space.lam ** -2


def test_composition_is_an_action(lr_space: OrbitSpace) -> None:
    rng = random.Random(3)
    for _ in range(25):
        g1, g2 = _random_deck(lr_space, rng), _random_deck(lr_space, rng)
        p = lr_space.to_eigen((Fraction(rng.randint(-9, 9), 5), Fraction(rng.randint(-9, 9), 7)))
        assert transport(g2, transport(g1, p)) == transport(g2.compose(g1), p)
        assert transport(g1.inverse(), transport(g1, p)) == p


def test_lattice_map_matches_deck_element(lr_space: OrbitSpace) -> None:
    rng = random.Random(5)
    for _ in range(20):
        m1 = lr_space.lattice_map(rng.randint(-2, 2), (rng.randint(-3, 3), rng.randint(-3, 3)))
        m2 = lr_space.lattice_map(rng.randint(-2, 2), (rng.randint(-3, 3), rng.randint(-3, 3)))
        x = (Fraction(rng.randint(-9, 9), 4), Fraction(rng.randint(-9, 9), 3))
        assert m1.compose(m2).apply(x) == m1.apply(m2.apply(x))
        assert m1.inverse().apply(m1.apply(x)) == x
        p = lr_space.to_eigen(x)
        assert transport(m1.as_deck_element(lr_space), p) == lr_space.to_eigen(m1.apply(x))


def test_drilled_origin_in_small_window(lr_space: OrbitSpace) -> None:
    pts = enumerate_lifts(lr_space, drilled_set(lr_space), _window(lr_space, 1))
    assert (lr_space.q(0), lr_space.q(0)) in pts
    assert pts == sorted(pts)


def test_degenerate_window_is_empty(lr_space: OrbitSpace) -> None:
    w = Window(lr_space.q(0), lr_space.q(0), lr_space.q(-1), lr_space.q(1))
    assert enumerate_lifts(lr_space, drilled_set(lr_space), w) == []


def test_matches_brute_force(lr_space: OrbitSpace) -> None:
    w = _window(lr_space, 5)
    fast = enumerate_lifts(lr_space, drilled_set(lr_space), w)
    slow = brute_force_lifts(lr_space, lr_space.drill.point, w, radius=12)
    assert fast == slow
    assert len(fast) > 10


def test_period_three_drill_matches_brute_force() -> None:
    from orbitspace.monodromy import parse_monodromy_spec
    from orbitspace.space import build_orbit_space

    os = build_orbit_space(parse_monodromy_spec({"word": "LR", "drill": {"period": 3, "point": ["1/2", "1/2"]}}))
    w = _window(os, 3)
    fast = enumerate_lifts(os, drilled_set(os), w)
    assert fast == brute_force_lifts(os, os.drill.point, w, radius=10)


def test_lifts_are_deck_consistent(lr_space: OrbitSpace) -> None:
    w = _window(lr_space, 4)
    pts = enumerate_lifts(lr_space, drilled_set(lr_space), w)
    listed = set(pts)
    rng = random.Random(9)
    for _ in range(10):
        g = _random_deck(lr_space, rng)
        for p in pts:
            q = transport(g, p)
            if w.contains(q):
                assert q in listed


def test_stabilizer_fixes_point(lr_space: OrbitSpace) -> None:
    for x in [(Fraction(0), Fraction(0)), (Fraction(2), Fraction(-1)), (Fraction(1, 2), Fraction(1, 2))]:
        p = lr_space.to_eigen(x)
        g = lr_space.stabilizer(p)
        assert g.k >= 1
        assert transport(g, p) == p


def test_point_budget(lr_space: OrbitSpace) -> None:
    with pytest.raises(WindowTooLarge):
        enumerate_lifts(lr_space, drilled_set(lr_space), _window(lr_space, 20), point_budget=10)


def test_point_budget_from_env(lr_space: OrbitSpace, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("VEER_POINT_BUDGET", "5")
    with pytest.raises(WindowTooLarge):
        enumerate_lifts(lr_space, drilled_set(lr_space), _window(lr_space, 10))


def test_puncture_validation(lr_space: OrbitSpace) -> None:
    ok = puncture_set(lr_space, [(Fraction(1, 5), Fraction(2, 5))])
    assert len(ok) == 1
    assert ok.contains(lr_space, lr_space.to_eigen((Fraction(6, 5), Fraction(-3, 5))))
    with pytest.raises(PunctureRejected):
        puncture_set(lr_space, [(Fraction(3), Fraction(-1))])
    image = lr_space.lattice_map(1, (0, 0)).apply((Fraction(1, 5), Fraction(2, 5)))
    with pytest.raises(PunctureRejected):
        puncture_set(lr_space, [(Fraction(1, 5), Fraction(2, 5)), image])


def test_same_orbit_for_quadratic_points(lr_space: OrbitSpace) -> None:
    p = (lr_space.lam / 3, QuadNum.rational(Fraction(1, 7), 5))
    g = lr_space.deck_element(2, (1, -4))
    assert lr_space.same_orbit(p, transport(g, p))
    assert not lr_space.same_orbit(p, (p[0] + Fraction(1, 3), p[1]))
