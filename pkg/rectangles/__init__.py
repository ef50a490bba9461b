"""Edge, face and tetrahedron rectangles over the drilled lift set."""

from rectangles.core_points import CorePoint, CoreSolver, Neighbour, core_point, fixed_point
from rectangles.enumerate import (
    edge_rects_among,
    enumerate_edge_rects,
    first_above,
    first_below,
    first_left,
    first_right,
    interior_points,
    is_edge_rect,
    points_in_rect,
    widening,
)
from rectangles.models import (
    BLUE,
    RED,
    DegenerateRect,
    EdgeRect,
    NoRecurrence,
    NotInC,
    Rect,
    TetraRect,
    WindowExhausted,
)
from rectangles.orbits import FaceLink, OrbitCatalog, enumerate_orbit_representatives, seed_tetra
from rectangles.order import lies_above, order_violations, quadrant_of, shared_corner
from rectangles.staircase import Staircase, check_recurrence, recurrence_map, staircase
from rectangles.tetra import (
    adjacent_tetra,
    enumerate_tetra_rects,
    face_corner,
    tetra_above,
    tetra_below,
    verify_tetra_rect,
)

__all__ = [
    # Models and errors
    "BLUE",
    "RED",
    "DegenerateRect",
    "EdgeRect",
    "NoRecurrence",
    "NotInC",
    "Rect",
    "TetraRect",
    "WindowExhausted",
    # Order
    "lies_above",
    "order_violations",
    "quadrant_of",
    "shared_corner",
    # Enumeration and strip searches
    "edge_rects_among",
    "enumerate_edge_rects",
    "first_above",
    "first_below",
    "first_left",
    "first_right",
    "interior_points",
    "is_edge_rect",
    "points_in_rect",
    "widening",
    # Tetrahedron rectangles
    "adjacent_tetra",
    "enumerate_tetra_rects",
    "face_corner",
    "tetra_above",
    "tetra_below",
    "verify_tetra_rect",
    # Staircases
    "Staircase",
    "check_recurrence",
    "recurrence_map",
    "staircase",
    # Core points
    "CorePoint",
    "CoreSolver",
    "Neighbour",
    "core_point",
    "fixed_point",
    # Orbits
    "FaceLink",
    "OrbitCatalog",
    "enumerate_orbit_representatives",
    "seed_tetra",
]
