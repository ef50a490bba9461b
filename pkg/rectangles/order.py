"""The partial order on rectangles and corner relations between them.

``R2`` lies above ``R1`` when ``R2`` is thinner in the stable direction and
taller in the unstable one: its s-range sits inside that of ``R1`` and the
u-range of ``R1`` sits inside its own. The top edge of a tetrahedron rectangle
lies above its bottom edge.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

from orbitspace.space import Point
from rectangles.models import EdgeRect, Rect, TetraRect

AnyRect = Union[Rect, EdgeRect, TetraRect]


def _rect(r: AnyRect) -> Rect:
    return r if isinstance(r, Rect) else r.rect


def lies_above(r2: AnyRect, r1: AnyRect) -> bool:
    """True iff ``r2`` lies strictly above ``r1``."""
    a, b = _rect(r2), _rect(r1)
    if a == b:
        return False
    return (
        b.s_lo <= a.s_lo
        and a.s_hi <= b.s_hi
        and a.u_lo <= b.u_lo
        and b.u_hi <= a.u_hi
    )


def comparable(r1: AnyRect, r2: AnyRect) -> bool:
    return lies_above(r1, r2) or lies_above(r2, r1)


def shared_corner(e1: EdgeRect, e2: EdgeRect) -> Optional[Point]:
    """The corner two edge rectangles share, if they share exactly one."""
    common = [c for c in e1.corners if e2.has_corner(c)]
    return common[0] if len(common) == 1 else None


def quadrant_of(base: Point, p: Point) -> str:
    """Quadrant (I..IV) of ``p`` relative to ``base``; ``p`` must differ in both coordinates."""
    east = p[0] > base[0]
    north = p[1] > base[1]
    if east and north:
        return "I"
    if north:
        return "II"
    if not east:
        return "III"
    return "IV"


def is_chain(rects: Sequence[AnyRect]) -> bool:
    """True when each rectangle lies above the one before it."""
    return all(lies_above(rects[i + 1], rects[i]) for i in range(len(rects) - 1))


def order_violations(rects: Iterable[AnyRect]) -> list[tuple[int, int]]:
    """Index pairs breaking irreflexivity, antisymmetry or transitivity."""
    items = list(rects)
    bad: list[tuple[int, int]] = []
    above = {
        (i, j)
        for i, a in enumerate(items)
        for j, b in enumerate(items)
        if lies_above(a, b)
    }
    for i, j in above:
        if i == j or (j, i) in above:
            bad.append((i, j))
    for i, j in above:
        for j2, k in above:
            if j2 == j and (i, k) not in above and i != k:
                bad.append((i, k))
    return sorted(set(bad))
