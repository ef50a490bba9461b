"""
Configuration constants for rectangle searches.

Window widening and core iteration limits live in ``orbitspace.config`` and
are shared; the values here only concern walks along staircases.
"""

# ---------------------------------------------------------------------------
# Staircase walks
# ---------------------------------------------------------------------------
NEIGHBOUR_WALK_CAP: int = 32

# ---------------------------------------------------------------------------
# Orbit search
# ---------------------------------------------------------------------------
MAX_TETRA_ORBITS: int = 512
