"""PL diagonals: tight arcs, buoys, diagonal systems and their verification."""

from diagonals.arcs import Component, NotTransverse, PLArc, arc_intersection, interior_overlap
from diagonals.buoys import BuoyPlacer, EpsilonUnderflow, place_buoys
from diagonals.pairs import AnchorRect, BuoyTarget, EmptyIntersection, classify_pair, half_rect, q_rects
from diagonals.render import render_svg, render_system
from diagonals.system import (
    DiagonalEntry,
    DiagonalLift,
    DiagonalSystem,
    MissingDiagonal,
    anchor_diagonal,
    build_pl_diagonals,
    diagonal_system_to_dict,
    enforce_node_goals,
    straight_diagonals,
)
from diagonals.tight import SlitConfig, SlitOnEndpoint, tight_arc
from diagonals.verify import overlap_slope_ok, pair_failure, same_color_pairs, verify_plo

__all__ = [
    # Arcs
    "Component",
    "PLArc",
    "arc_intersection",
    "interior_overlap",
    # Tight arcs
    "SlitConfig",
    "tight_arc",
    # Anchor subrectangles
    "AnchorRect",
    "BuoyTarget",
    "classify_pair",
    "half_rect",
    "q_rects",
    # Buoys
    "BuoyPlacer",
    "place_buoys",
    # Diagonal systems
    "DiagonalEntry",
    "DiagonalLift",
    "DiagonalSystem",
    "anchor_diagonal",
    "build_pl_diagonals",
    "diagonal_system_to_dict",
    "enforce_node_goals",
    "straight_diagonals",
    # Verification
    "overlap_slope_ok",
    "pair_failure",
    "same_color_pairs",
    "verify_plo",
    # Figures
    "render_svg",
    "render_system",
    # Errors
    "EmptyIntersection",
    "EpsilonUnderflow",
    "MissingDiagonal",
    "NotTransverse",
    "SlitOnEndpoint",
]
