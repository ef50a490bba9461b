"""
Configuration constants for the bicontact certifiers.

Chart units: the filling chart is ``[-eps, eps]^2 x R/pZ`` and the shell
is the part with ``max(|x|, |y|) >= eps/2``.
"""

# ---------------------------------------------------------------------------
# Charts and sampling
# ---------------------------------------------------------------------------
EPSILON: float = 1.0
GRID: int = 64
TOLERANCE: float = 1e-6
PROFILE_SAMPLES: int = 1025
SLAB_DEPTH: int = 8                  # z-slices evaluated per chunk

# ---------------------------------------------------------------------------
# Thresholds
# ---------------------------------------------------------------------------
FIBER_TOL: float = 1e-12
REEB_TOL: float = 1e-10
SHELL_TOL: float = 1e-12
PROFILE_SLACK: float = 1e-10
RICHARDSON_MIN_ORDER: float = 1.9

# ---------------------------------------------------------------------------
# Finite differences
# ---------------------------------------------------------------------------
FD_STEP: float = 1e-3

SAMPLING_NOTE: str = (
    "grid certification samples the chart; it is not a proof. "
    "Margins are recorded so grids can be refined."
)
