"""Shared pytest fixtures: orbit spaces for the standard monodromy words."""

import pytest

from orbitspace.monodromy import parse_monodromy_spec
from orbitspace.points import PointOrbitSet, drilled_set
from orbitspace.space import OrbitSpace, build_orbit_space
from triangulate.assemble import assemble
from triangulate.models import VeeringTriangulation


def _space(word: str) -> OrbitSpace:
    return build_orbit_space(parse_monodromy_spec({"word": word}))


@pytest.fixture(scope="session")
def lr_space() -> OrbitSpace:
    return _space("LR")


@pytest.fixture(scope="session")
def llr_space() -> OrbitSpace:
    return _space("LLR")


@pytest.fixture(scope="session")
def llrr_space() -> OrbitSpace:
    return _space("LLRR")


@pytest.fixture(scope="session")
def lr_drilled(lr_space: OrbitSpace) -> PointOrbitSet:
    return drilled_set(lr_space)


@pytest.fixture(scope="session")
def lr_triangulation(lr_space: OrbitSpace, lr_drilled: PointOrbitSet) -> VeeringTriangulation:
    return assemble(lr_space, lr_drilled)
