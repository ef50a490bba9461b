"""Tests for core points, core boxes and the orbit catalog."""

import pytest

from orbitspace.points import PointOrbitSet, drilled_set
from orbitspace.space import OrbitSpace, Window, transport
from rectangles.core_points import ABOVE, CoreSolver, core_point
from rectangles.enumerate import enumerate_edge_rects
from rectangles.models import EdgeRect
from rectangles.order import lies_above
from rectangles.orbits import enumerate_orbit_representatives, same_tetra_orbit
from rectangles.tetra import enumerate_tetra_rects, verify_tetra_rect


def _some_edges(os: OrbitSpace, C: PointOrbitSet, count: int = 6) -> list[EdgeRect]:
    w = Window(os.q(-2), os.q(2), os.q(-2), os.q(2))
    return enumerate_edge_rects(os, C, w)[:count]


def test_core_is_fixed_by_its_recurrence(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    solver = CoreSolver(lr_space, lr_drilled)
    for e in _some_edges(lr_space, lr_drilled):
        c, h, _ = solver.core_of(e)
        assert transport(h.as_deck_element(lr_space), c) == c
        assert e.rect.contains_open(c)


def test_cores_are_periodic(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    for e in _some_edges(lr_space, lr_drilled, 3):
        c, _ = core_point(lr_space, lr_drilled, e)
        g = lr_space.stabilizer(c)
        assert g.k > 0
        assert transport(g, c) == c


def test_drilled_origin_cores_are_centers(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    # The point reflection through the midpoint of the corners preserves the
    # lattice, so it fixes the whole rectangle sequence and hence the core.
    for e in _some_edges(lr_space, lr_drilled):
        c, pinched = core_point(lr_space, lr_drilled, e)
        assert c == e.rect.center()
        assert not pinched


def test_strict_staircase_inequality_for_distinct_cores(llr_space: OrbitSpace) -> None:
    C = drilled_set(llr_space)
    solver = CoreSolver(llr_space, C)
    for e in _some_edges(llr_space, C, 4):
        c = solver.core_of(e)[0]
        for n in solver.neighbours(e):
            if n.direction != ABOVE:
                continue
            assert lies_above(n.rect, e)
            c2 = solver.core_of(n.rect)[0]
            if c2 == c:
                continue
            b = n.corner
            assert abs(c[0] - b[0]) > abs(c2[0] - b[0])
            assert abs(c[1] - b[1]) < abs(c2[1] - b[1])


def test_core_box_is_central_and_clear(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    solver = CoreSolver(lr_space, lr_drilled)
    e = _some_edges(lr_space, lr_drilled, 1)[0]
    box = solver.core_box(e)
    c = solver.core_of(e)[0]
    assert box.center() == c
    assert e.rect.contains_rect(box)
    for n in solver.neighbours(e):
        assert not box.contains_closed(solver.core_of(n.rect)[0])


def test_core_cache_reuses_orbits(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    solver = CoreSolver(lr_space, lr_drilled)
    e = _some_edges(lr_space, lr_drilled, 1)[0]
    g = lr_space.lattice_map(1, (2, -1))
    moved = e.mapped(lr_space, g)
    c = solver.core_of(e)[0]
    assert len(solver._cache) == 1
    c_moved = solver.core_of(moved)[0]
    assert len(solver._cache) == 1
    assert c_moved == transport(g.as_deck_element(lr_space), c)


@pytest.mark.parametrize(
    "fixture, tetras",
    [("lr_space", 2), ("llr_space", 3), ("llrr_space", 4)],
)
def test_orbit_counts(request: pytest.FixtureRequest, fixture: str, tetras: int) -> None:
    os = request.getfixturevalue(fixture)
    catalog = enumerate_orbit_representatives(os, drilled_set(os))
    assert len(catalog.tetras) == tetras
    assert len(catalog.edges) == tetras
    assert len(catalog.face_key_list) == 2 * tetras


def test_face_links_are_involutive(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    catalog = enumerate_orbit_representatives(lr_space, lr_drilled)
    for t, row in enumerate(catalog.links):
        for i, link in enumerate(row):
            assert link is not None
            assert sorted(link.perm) == [0, 1, 2, 3]
            assert link.perm[i] == link.partner_face
            back = catalog.links[link.partner][link.partner_face]
            assert (back.partner, back.partner_face) == (t, i)
        assert verify_tetra_rect(lr_space, lr_drilled, catalog.tetras[t]) == []


def test_window_tetras_belong_to_catalog(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> None:
    catalog = enumerate_orbit_representatives(lr_space, lr_drilled)
    w = Window(lr_space.q(-2), lr_space.q(2), lr_space.q(-2), lr_space.q(2))
    for T in enumerate_tetra_rects(lr_space, lr_drilled, w):
        assert sum(same_tetra_orbit(lr_space, T, rep) for rep in catalog.tetras) == 1
