"""Tests for buoy placement around punctures."""

from fractions import Fraction

import pytest

from anchors.system import build_anchor_system
from diagonals.buoys import BuoyPlacer, place_buoys
from diagonals.render import render_svg
from diagonals.system import DiagonalSystem, build_pl_diagonals
from diagonals.verify import verify_plo
from orbitspace.points import PointOrbitSet, puncture_set
from orbitspace.space import OrbitSpace, Window
from rectangles.models import EdgeRect

# The lattice point (1/2, 0) is the center of the unit edge rectangle, so
# the straight diagonal of that rectangle runs through the puncture.
PUNCTURE = (Fraction(1, 2), Fraction(0))


def _window(os: OrbitSpace) -> Window:
    return Window(os.q(Fraction(-3, 2)), os.q(Fraction(3, 2)), os.q(Fraction(-3, 2)), os.q(Fraction(3, 2)))


@pytest.fixture(scope="module")
def punctured(lr_space: OrbitSpace, lr_drilled: PointOrbitSet):
    w = _window(lr_space)
    punctures = puncture_set(lr_space, [PUNCTURE])
    anchors = build_anchor_system(lr_space, lr_drilled, w, avoid=punctures)
    buoys = place_buoys(lr_space, lr_drilled, anchors, punctures, w, rounds=0)
    system = build_pl_diagonals(lr_space, lr_drilled, anchors, buoys, w, avoid=punctures)
    return punctures, anchors, buoys, system


def test_unit_diagonal_avoids_the_puncture(lr_space: OrbitSpace, punctured) -> None:
    *_, system = punctured
    unit = EdgeRect.from_corners(lr_space.to_eigen((0, 0)), lr_space.to_eigen((1, 0)))
    arc = system.diagonal(unit)
    assert not arc.contains(lr_space.to_eigen(PUNCTURE))
    assert arc.endpoints == unit.corners


def test_no_diagonal_interior_meets_a_puncture(lr_space: OrbitSpace, punctured) -> None:
    punctures, _, _, system = punctured
    report = verify_plo(system, _window(lr_space), punctures=punctures)
    checks = {v.check for v in report.violations}
    assert "interior_puncture" not in checks
    assert "diagonal_endpoints" not in checks


def test_buoys_are_attached_to_known_orbits(punctured) -> None:
    _, _, buoys, system = punctured
    assert not buoys.periodic()
    for rep in buoys.attached():
        assert rep.owner in system.entries
        assert system.entries[rep.owner].rect.rect.contains_open(rep.point)


def test_dip_fixpoint_is_stable(lr_space: OrbitSpace, lr_drilled: PointOrbitSet, punctured) -> None:
    punctures, anchors, _, _ = punctured
    placer = BuoyPlacer(lr_space, lr_drilled, anchors, punctures, _window(lr_space))
    first = placer.dip_to_fixpoint()
    assert first == placer.dips
    assert placer.dip_to_fixpoint() == 0


def test_svg_marks_punctures(lr_space: OrbitSpace, punctured) -> None:
    _, _, _, system = punctured
    lifts = system.materialize(_window(lr_space))
    marks = [lr_space.to_eigen(PUNCTURE)]
    svg = render_svg([d.rect for d in lifts], [d.arc for d in lifts], marks)
    assert svg.count("<polyline") == len(lifts)
    assert svg.count("<circle") == 1
    assert isinstance(system, DiagonalSystem)
