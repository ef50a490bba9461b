"""
Configuration constants for anchor placement.
"""

# ---------------------------------------------------------------------------
# Pinched families
# ---------------------------------------------------------------------------
RHO_MAX_EXPONENT: int = 40          # dilation search over rho = 2**i, i <= this
FAMILY_CAP: int = 256               # members collected per pinched core
FAMILY_BAND: int = 3                # widths kept within Lambda**(+-band) of the seed

# ---------------------------------------------------------------------------
# Snapping to lattice-rational points
# ---------------------------------------------------------------------------
SNAP_START_DENOMINATOR: int = 64
SNAP_MAX_DENOMINATOR: int = 1 << 60
SNAP_RELATIVE_TOLERANCE: float = 1e-6
