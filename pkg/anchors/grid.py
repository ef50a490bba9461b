"""Grid coordinates for pinched families and their placement maps.

A pinched family is indexed by pairs ``(m, n)``: ``m`` numbers the corners on
one side of the core and ``n`` those on the other, each increasing as the
rectangle from the core to that corner moves up its staircase. The map

    (m, n) -> (x, y) = (L ** ((-3m/m0 + n/n0) / 2), -L ** ((-m/m0 + 3n/n0) / 2))

is strictly monotone in the sense the anchors need, and shifting ``(m, n)`` by
``(m0, n0)`` maps ``(x, y)`` to ``(x / L, y * L)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from core.errors import InvalidInputError
from exactfield.quadnum import QuadNum, qn_to_float


@dataclass(frozen=True)
class GridPoint:
    """Placement offset with an exact value when both exponents are integers."""

    x: float
    y: float
    exact: Optional[tuple[QuadNum, QuadNum]] = None


def grid_exponents(m0: int, n0: int, m: int, n: int) -> tuple[Fraction, Fraction]:
    return (
        (Fraction(-3 * m, m0) + Fraction(n, n0)) / 2,
        (Fraction(-m, m0) + Fraction(3 * n, n0)) / 2,
    )


def grid_maps(m0: int, n0: int, point: tuple[int, int], Lam: QuadNum) -> GridPoint:
    """Image of a grid point in the plane around the core.

    Raises:
        InvalidInputError: if ``m0`` or ``n0`` is not positive.
    """
    if m0 < 1 or n0 < 1:
        raise InvalidInputError(f"grid periods must be positive, got m0={m0}, n0={n0}")
    ex, ey = grid_exponents(m0, n0, point[0], point[1])
    base = qn_to_float(Lam)
    x = base ** float(ex)
    y = -(base ** float(ey))
    exact = None
    if ex.denominator == 1 and ey.denominator == 1:
        exact = (Lam ** int(ex), -(Lam ** int(ey)))
    return GridPoint(x, y, exact)


def scale_exponent(width: QuadNum, Lam: QuadNum) -> int:
    """The ``k`` with ``width * Lam**k`` in ``[1, Lam)``."""
    if width.sign() <= 0:
        raise InvalidInputError("staircase widths must be positive")
    k = -math.floor(math.log(qn_to_float(width)) / math.log(qn_to_float(Lam)))
    scaled = width * Lam ** k
    while scaled < 1:
        k += 1
        scaled = scaled * Lam
    while scaled >= Lam:
        k -= 1
        scaled = scaled / Lam
    return k


def fundamental_widths(widths: Sequence[QuadNum], Lam: QuadNum) -> list[QuadNum]:
    """Distinct widths scaled into ``[1, Lam)``, widest first."""
    scaled = {w * Lam ** scale_exponent(w, Lam) for w in widths}
    return sorted(scaled, reverse=True)


def staircase_index(width: QuadNum, Lam: QuadNum, m0: int, i: int) -> int:
    """Index of the staircase corner at stable distance ``width``.

    ``i`` is the rank of the scaled width among the ``m0`` fundamental widths;
    each contraction by ``Lam`` moves the index up by ``m0``.
    """
    return scale_exponent(width, Lam) * m0 + i


def index_in(width: QuadNum, Lam: QuadNum, fundamental: Sequence[QuadNum]) -> Optional[int]:
    """``staircase_index`` with the rank looked up in ``fundamental``."""
    k = scale_exponent(width, Lam)
    scaled = width * Lam ** k
    try:
        rank = list(fundamental).index(scaled)
    except ValueError:
        return None
    return k * len(fundamental) + rank


def preserving_offset(m0: int, n0: int, point: tuple[int, int], Lam: QuadNum, red: bool) -> tuple[float, float]:
    """Offset from the core for an orientation-preserving family.

    Red families take the second quadrant and blue families the first.
    """
    g = grid_maps(m0, n0, point, Lam)
    return (-g.x if red else g.x, -g.y)


def reversing_offset(
    r: int,
    point: tuple[int, int],
    Lam2: QuadNum,
    lam_p: float,
    red: bool,
) -> tuple[float, float]:
    """Offset for an orientation-reversing family with ``[c](m, n) = (n, m + r)``.

    The grid map is used on even translates of ``{0 <= m + n < r}`` and the
    remaining points take the image under ``[c]^-1`` of their successor.
    ``lam_p`` is the stable contraction of ``[c]``.
    """
    m, n = point
    if ((m + n) // r) % 2 == 0:
        return preserving_offset(r, r, point, Lam2, red)
    ox, oy = preserving_offset(r, r, (n, m + r), Lam2, red)
    return (-lam_p * ox, -oy / lam_p)
