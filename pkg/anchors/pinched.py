"""Pinched families: edge rectangles sharing one core point.

The members of a family are indexed by grid pairs ``(m, n)`` read off their
corners on the two sides of the core, and placed at the core plus a grid
offset shrunk by ``1 / rho``. ``rho`` runs through powers of two until every
placement falls inside its member's core box.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Literal, Optional

from anchors.config import (
    FAMILY_BAND,
    FAMILY_CAP,
    RHO_MAX_EXPONENT,
    SNAP_MAX_DENOMINATOR,
    SNAP_RELATIVE_TOLERANCE,
    SNAP_START_DENOMINATOR,
)
from anchors.grid import fundamental_widths, index_in, preserving_offset, reversing_offset
from core.errors import VerificationFailure
from exactfield.quadnum import QuadNum, qn_to_float
from orbitspace.monodromy import LatticePoint
from orbitspace.space import LatticeMap, OrbitSpace, Point, point_to_float, point_to_json
from rectangles.core_points import ABOVE, CoreSolver
from rectangles.models import RED, EdgeRect, Rect
from rectangles.order import quadrant_of

logger = logging.getLogger(__name__)

Orientation = Literal["preserving", "reversing"]


class PinchedUnresolved(VerificationFailure):
    """Raised when a pinched family cannot be placed inside its core boxes."""


def side_quadrants(color: str) -> tuple[str, str]:
    """Quadrants of the core holding the ``m`` and ``n`` corners."""
    return ("III", "I") if color == RED else ("IV", "II")


def snap_near(
    os: OrbitSpace,
    base: LatticePoint,
    ds: float,
    du: float,
    accept: Callable[[Point], bool],
) -> Optional[Point]:
    """A lattice-rational point close to ``base + (ds, du)`` in eigen coordinates.

    The offset is converted to lattice coordinates and each entry rounded with
    ``Fraction.limit_denominator``. Denominators grow until the snapped point
    is within the relative tolerance of the target and ``accept`` holds.
    """
    beta, beta_u = qn_to_float(os.beta), qn_to_float(os.beta_u)
    dx2 = (ds - du) / (beta - beta_u)
    dx1 = ds - beta * dx2
    scale = max(abs(ds), abs(du)) or 1.0
    den = SNAP_START_DENOMINATOR
    while den <= SNAP_MAX_DENOMINATOR:
        y = (
            base[0] + Fraction(dx1).limit_denominator(den),
            base[1] + Fraction(dx2).limit_denominator(den),
        )
        p = os.to_eigen(y)
        fp, fc = point_to_float(p), point_to_float(os.to_eigen(base))
        err = max(abs(fp[0] - fc[0] - ds), abs(fp[1] - fc[1] - du))
        if err <= SNAP_RELATIVE_TOLERANCE * scale and accept(p):
            return p
        den *= 8
    return None


@dataclass(frozen=True)
class PinchedGrid:
    """One pinched family with its grid embedding."""

    core: Point
    color: str
    preimage: tuple[EdgeRect, ...]
    embedding: tuple[tuple[int, int], ...]
    params: tuple[int, int, int]
    orientation: Orientation
    stabilizer: LatticeMap
    Lam: QuadNum

    def iota(self, e: EdgeRect) -> tuple[int, int]:
        return self.embedding[self.preimage.index(e)]

    def offset(self, e: EdgeRect, rho: int, lam_p: float) -> tuple[float, float]:
        """Grid offset of a member from the core, before snapping."""
        m0, n0, r = self.params
        red = self.color == RED
        point = self.iota(e)
        if self.orientation == "preserving":
            ox, oy = preserving_offset(m0, n0, point, self.Lam, red)
        else:
            ox, oy = reversing_offset(r, point, self.Lam, lam_p, red)
        return (ox / rho, oy / rho)

    def equivariance_violations(self, os: OrbitSpace) -> list[EdgeRect]:
        """Members whose image under the stabilizer is indexed inconsistently."""
        m0, n0, r = self.params
        bad: list[EdgeRect] = []
        for e, (m, n) in zip(self.preimage, self.embedding):
            image = e.mapped(os, self.stabilizer)
            if image not in self.preimage:
                continue
            expected = (m + m0, n + n0) if self.orientation == "preserving" else (n, m + r)
            if self.iota(image) != expected:
                bad.append(e)
        return bad

    def to_dict(self) -> dict[str, Any]:
        return {
            "core": point_to_json(self.core),
            "color": self.color,
            "orientation": self.orientation,
            "params": list(self.params),
            "members": [
                {"rect": e.to_dict(), "grid": list(mn)}
                for e, mn in zip(self.preimage, self.embedding)
            ],
        }


def collect_family(solver: CoreSolver, seed: EdgeRect, core: Point, Lam: QuadNum) -> list[EdgeRect]:
    """Members of the seed's family with widths within ``Lam**FAMILY_BAND`` of the seed.

    Raises:
        PinchedUnresolved: if more than ``FAMILY_CAP`` members turn up.
    """
    w0 = qn_to_float(seed.rect.width)
    spread = qn_to_float(Lam) ** FAMILY_BAND
    lo, hi = w0 / spread, w0 * spread
    seen = {seed}
    queue = deque([seed])
    members: list[EdgeRect] = []
    while queue:
        e = queue.popleft()
        members.append(e)
        if len(members) > FAMILY_CAP:
            raise PinchedUnresolved(f"pinched family at {point_to_json(core)} exceeds {FAMILY_CAP} members")
        for nb in solver.neighbours(e):
            cand = nb.rect
            if cand in seen:
                continue
            seen.add(cand)
            if not lo <= qn_to_float(cand.rect.width) <= hi:
                continue
            if solver.core_of(cand)[0] == core:
                queue.append(cand)
    members.sort(key=lambda e: (e.west, e.east))
    return members


def pinched_grid(solver: CoreSolver, seed: EdgeRect, core: Point) -> PinchedGrid:
    """Collect and index the family of ``seed`` around ``core``.

    Raises:
        PinchedUnresolved: when a corner width falls outside the collected
            fundamental domain.
    """
    os = solver.os
    g = os.stabilizer_map(os.to_lattice(core)).inverse()
    p = -g.k
    reversing = os.sigma_A < 0 and p % 2 == 1
    Lam = os.lam ** (2 * p if reversing else p)
    members = collect_family(solver, seed, core, Lam)
    q_m, q_n = side_quadrants(seed.color)

    def widths(e: EdgeRect) -> tuple[QuadNum, QuadNum]:
        by_quadrant = {quadrant_of(core, c): abs(c[0] - core[0]) for c in e.corners}
        return by_quadrant[q_m], by_quadrant[q_n]

    pairs = [widths(e) for e in members]
    m_fund = fundamental_widths([w for w, _ in pairs], Lam)
    n_fund = fundamental_widths([w for _, w in pairs], Lam)
    if reversing:
        shrink = os.lam ** (-p)
        n_widths = [w * shrink for _, w in pairs]
        n_fund = m_fund
        params = (len(m_fund), len(m_fund), len(m_fund))
    else:
        n_widths = [w for _, w in pairs]
        params = (len(m_fund), len(n_fund), 0)

    embedding: list[tuple[int, int]] = []
    for (wm, _), wn in zip(pairs, n_widths):
        i, j = index_in(wm, Lam, m_fund), index_in(wn, Lam, n_fund)
        if i is None or j is None:
            raise PinchedUnresolved(f"family at {point_to_json(core)} is not closed under its stabilizer")
        embedding.append((i, j))

    grid = PinchedGrid(
        core=core,
        color=seed.color,
        preimage=tuple(members),
        embedding=tuple(embedding),
        params=params,
        orientation="reversing" if reversing else "preserving",
        stabilizer=g,
        Lam=Lam,
    )
    logger.info(
        "Pinched family at %s: %d members, %s, params=%s",
        point_to_float(core), len(members), grid.orientation, params,
    )
    return grid


def place_family(
    solver: CoreSolver,
    grid: PinchedGrid,
    blocked: Callable[[Point], bool],
) -> tuple[dict[EdgeRect, Point], int]:
    """Snapped placements for every member and the ``rho`` that produced them.

    Raises:
        PinchedUnresolved: if no ``rho = 2**i`` with ``i <= RHO_MAX_EXPONENT``
            keeps every placement inside its core box.
    """
    os = solver.os
    base = os.to_lattice(grid.core)
    lam_p = os.lam_float ** (-grid.stabilizer.k)
    boxes: dict[EdgeRect, Rect] = {e: solver.core_box(e) for e in grid.preimage}
    for i in range(RHO_MAX_EXPONENT + 1):
        rho = 1 << i
        placed: dict[EdgeRect, Point] = {}
        for e in grid.preimage:
            box = boxes[e]
            ds, du = grid.offset(e, rho, lam_p)
            p = snap_near(os, base, ds, du, lambda q, box=box: box.contains_open(q) and not blocked(q))
            if p is None:
                break
            placed[e] = p
        else:
            if not _family_strict(grid, placed, solver):
                continue
            logger.info("Pinched family placed with rho=2^%d", i)
            return placed, rho
    raise PinchedUnresolved(
        f"family at {point_to_json(grid.core)} escaped its core boxes up to rho=2^{RHO_MAX_EXPONENT}"
    )


def strictly_ordered(corner: Point, lower: Point, upper: Point) -> bool:
    """``R(corner, lower)`` strictly wider and strictly shorter than ``R(corner, upper)``."""
    return (
        abs(lower[0] - corner[0]) > abs(upper[0] - corner[0])
        and abs(lower[1] - corner[1]) < abs(upper[1] - corner[1])
    )


def _family_strict(grid: PinchedGrid, placed: dict[EdgeRect, Point], solver: CoreSolver) -> bool:
    for e in grid.preimage:
        for nb in solver.neighbours(e):
            if nb.direction != ABOVE or nb.rect not in placed:
                continue
            if not strictly_ordered(nb.corner, placed[e], placed[nb.rect]):
                return False
    return True
