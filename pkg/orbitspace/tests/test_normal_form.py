"""Tests for deck-canonical normal forms."""

import random
from fractions import Fraction

from orbitspace.normal_form import find_deck_element, normalize_points, orbit_id
from orbitspace.space import OrbitSpace, transport


def _points(os: OrbitSpace, raw):
    return [os.to_eigen((Fraction(a), Fraction(b))) for a, b in raw]


def test_key_is_deck_invariant(lr_space: OrbitSpace) -> None:
    pts = _points(lr_space, [(0, 0), (1, 1), (2, 1)])
    key, _ = normalize_points(lr_space, pts)
    rng = random.Random(17)
    for _ in range(15):
        g = lr_space.deck_element(rng.randint(-3, 3), (rng.randint(-5, 5), rng.randint(-5, 5)))
        moved = [transport(g, p) for p in pts]
        assert normalize_points(lr_space, moved)[0] == key


def test_find_deck_element_recovers_map(llr_space: OrbitSpace) -> None:
    pts = _points(llr_space, [(0, 0), (1, 0), (1, 1), (2, 1)])
    m = llr_space.lattice_map(2, (3, -1))
    g = m.as_deck_element(llr_space)
    moved = [transport(g, p) for p in pts]
    assert find_deck_element(llr_space, pts, moved) == m


def test_distinct_orbits_have_distinct_keys(lr_space: OrbitSpace) -> None:
    a = _points(lr_space, [(0, 0), (1, 0)])
    b = _points(lr_space, [(0, 0), (1, 1)])
    assert find_deck_element(lr_space, a, b) is None


def test_single_point_normal_form(lr_space: OrbitSpace) -> None:
    p = lr_space.to_eigen((Fraction(1, 2), Fraction(0)))
    key, g = normalize_points(lr_space, [p])
    q = lr_space.to_eigen((Fraction(1, 2), Fraction(1, 2)))
    assert normalize_points(lr_space, [q])[0] == key
    assert min(key[0]) >= 0


def test_orbit_id_is_stable_under_deck_maps(lr_space: OrbitSpace) -> None:
    pts = _points(lr_space, [(0, 0), (1, 1)])
    oid, _ = orbit_id(lr_space, pts)
    g = lr_space.deck_element(2, (1, -4))
    assert orbit_id(lr_space, [transport(g, p) for p in pts])[0] == oid
    assert oid.startswith("E") and len(oid) == 13
    other = _points(lr_space, [(0, 0), (1, 0)])
    assert orbit_id(lr_space, other)[0] != oid
