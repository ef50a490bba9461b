"""
Configuration constants for peeling, rounding, rotation and the pipeline driver.

Scales are exact fractions. Every auto-halved scale stops at its floor and
the stage then raises ``EpsilonUnderflow`` or ``NeighborhoodClash``.
"""

from fractions import Fraction

# ---------------------------------------------------------------------------
# Peeling overlaps
# ---------------------------------------------------------------------------
PEEL_EPS_START: Fraction = Fraction(1, 16)   # relative slope increase of the rerouted stretch
PEEL_EPS_FLOOR: Fraction = Fraction(1, 1 << 40)
PEEL_MAX_STEPS: int = 512

# ---------------------------------------------------------------------------
# Rounding corners
# ---------------------------------------------------------------------------
ROUND_RESOLUTION: int = 4                    # segments replacing each turn
ROUND_SPAN_START: Fraction = Fraction(1, 4)  # share of each incident segment inside the neighborhood
ROUND_SPAN_FLOOR: Fraction = Fraction(1, 1 << 40)

# ---------------------------------------------------------------------------
# Rotating misalignments
# ---------------------------------------------------------------------------
ROTATE_EPS_START: Fraction = Fraction(1, 8)      # new slope is (1 - eps) times the flattest upper slope
ROTATE_SPAN_START: Fraction = Fraction(1, 2)     # share of the reach to the nearer diagonal end
ROTATE_SPAN_FLOOR: Fraction = Fraction(1, 1 << 40)
ROTATE_MAX_ROUNDS: int = 64
