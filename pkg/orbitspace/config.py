"""
Configuration constants for orbit-space enumeration and geometric searches.

Defines point budgets, window widening limits and iteration caps shared by
the orbitspace, rectangles and triangulate packages. Environment variables
are loaded from a .env file at module import time via python-dotenv.
"""

import os
from typing import Optional

from dotenv import load_dotenv

# ---------------------------------------------------------------------------
# Load .env file (idempotent; does nothing if already loaded or missing)
# ---------------------------------------------------------------------------
load_dotenv()

# ---------------------------------------------------------------------------
# Enumeration budgets
# ---------------------------------------------------------------------------
DEFAULT_POINT_BUDGET: int = 100_000
POINT_BUDGET_ENV: str = "VEER_POINT_BUDGET"

# ---------------------------------------------------------------------------
# Window widening (each attempt multiplies the searched extent by lambda)
# ---------------------------------------------------------------------------
WIDEN_ATTEMPTS: int = 24
STAIRCASE_START_WIDTH: int = 1
STAIRCASE_START_HEIGHT: int = 1

# ---------------------------------------------------------------------------
# Core-point iteration
# ---------------------------------------------------------------------------
CORE_ITERATION_CAP: int = 64

# ---------------------------------------------------------------------------
# Default window for CLI runs, in eigen-coordinates
# ---------------------------------------------------------------------------
DEFAULT_WINDOW_RADIUS: int = 3


def resolve_point_budget(override: Optional[int] = None) -> int:
    """Point budget from an explicit override, the env, or the default."""
    if override is not None and override > 0:
        return override
    raw = os.getenv(POINT_BUDGET_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_POINT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_POINT_BUDGET
    return value if value > 0 else DEFAULT_POINT_BUDGET
