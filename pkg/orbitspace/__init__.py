"""Orbit space, deck group, point orbit sets and normal forms."""

from orbitspace.monodromy import (
    BadDrilledPoint,
    BadMonodromy,
    DrillSpec,
    MonodromySpec,
    NotHyperbolic,
    load_monodromy_spec,
    load_punctures,
    monodromy_matrix,
    parse_drill,
    parse_monodromy_spec,
    parse_punctures,
    parse_word,
)
from orbitspace.space import (
    DeckElement,
    LatticeMap,
    NotLatticeRational,
    OrbitSpace,
    Point,
    Window,
    build_orbit_space,
    transport,
    transport_arc,
)
from orbitspace.points import (
    OrbitRep,
    PointOrbitSet,
    PunctureRejected,
    WindowTooLarge,
    drilled_set,
    enumerate_lattice_points,
    enumerate_lifts,
    puncture_set,
)
from orbitspace.normal_form import (
    OrbitAmbiguity,
    apply_lattice_map,
    deck_between,
    find_deck_element,
    normalize_points,
    orbit_id,
    orbit_id_of,
)

__all__ = [
    # Monodromy input
    "DrillSpec",
    "MonodromySpec",
    "load_monodromy_spec",
    "load_punctures",
    "monodromy_matrix",
    "parse_drill",
    "parse_monodromy_spec",
    "parse_punctures",
    "parse_word",
    # Orbit space and deck group
    "DeckElement",
    "LatticeMap",
    "OrbitSpace",
    "Point",
    "Window",
    "build_orbit_space",
    "transport",
    "transport_arc",
    # Point sets
    "OrbitRep",
    "PointOrbitSet",
    "drilled_set",
    "enumerate_lattice_points",
    "enumerate_lifts",
    "puncture_set",
    # Normal forms
    "apply_lattice_map",
    "deck_between",
    "find_deck_element",
    "normalize_points",
    "orbit_id",
    "orbit_id_of",
    # Errors
    "BadDrilledPoint",
    "BadMonodromy",
    "NotHyperbolic",
    "NotLatticeRational",
    "OrbitAmbiguity",
    "PunctureRejected",
    "WindowTooLarge",
]
