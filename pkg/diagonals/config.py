"""
Configuration constants for buoys, PL diagonals and their figures.
"""

from fractions import Fraction

# ---------------------------------------------------------------------------
# Buoy placement
# ---------------------------------------------------------------------------
BUOY_ROUNDS: int = 8                      # verify-then-place passes for pair buoys
DIP_TAU_START: Fraction = Fraction(1, 16)  # puncture dip scale, relative to the half-rectangle
DIP_TAU_FLOOR: Fraction = Fraction(1, 1 << 40)
DIP_FIXPOINT_CAP: int = 64

# Positions tried, as fractions of a target rectangle, when its center is taken
BUOY_SLOTS: tuple[Fraction, ...] = (
    Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4),
    Fraction(1, 5), Fraction(4, 5), Fraction(3, 8), Fraction(5, 8),
)

# ---------------------------------------------------------------------------
# Node goals (shared nodes and orbit-separating insertions)
# ---------------------------------------------------------------------------
NODE_GOAL_PASSES: int = 16
SPLIT_DEPTH: int = 12                     # dyadic levels tried when splitting a segment

# ---------------------------------------------------------------------------
# SVG output
# ---------------------------------------------------------------------------
SVG_SIZE: int = 800
SVG_MARGIN: int = 20
SVG_COLORS: dict[str, str] = {"red": "#c0392b", "blue": "#2e6bd1"}
