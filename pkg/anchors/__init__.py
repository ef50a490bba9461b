"""Strict anchor systems for edge rectangles."""

from anchors.grid import (
    GridPoint,
    fundamental_widths,
    grid_maps,
    preserving_offset,
    reversing_offset,
    scale_exponent,
    staircase_index,
)
from anchors.pinched import PinchedGrid, PinchedUnresolved, pinched_grid, place_family, snap_near
from anchors.system import (
    AnchorBuilder,
    AnchorEntry,
    AnchorSystem,
    MissingAnchor,
    build_anchor_system,
    verify_anchor_system,
)

__all__ = [
    # Grid maps
    "GridPoint",
    "fundamental_widths",
    "grid_maps",
    "preserving_offset",
    "reversing_offset",
    "scale_exponent",
    "staircase_index",
    # Pinched families
    "PinchedGrid",
    "pinched_grid",
    "place_family",
    "snap_near",
    # Anchor systems
    "AnchorBuilder",
    "AnchorEntry",
    "AnchorSystem",
    "build_anchor_system",
    "verify_anchor_system",
    # Errors
    "MissingAnchor",
    "PinchedUnresolved",
]
