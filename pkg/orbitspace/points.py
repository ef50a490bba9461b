"""Deck-invariant point sets and their window-bounded materialization."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from core.errors import InvalidInputError, VerificationFailure
from exactfield.quadnum import qn_to_float
from orbitspace.config import resolve_point_budget
from orbitspace.monodromy import LatticePoint
from orbitspace.space import DeckElement, OrbitSpace, Point, Window, point_to_json

logger = logging.getLogger(__name__)

LABELS = ("drilled", "puncture", "buoy", "anchor")


class WindowTooLarge(VerificationFailure):
    """Raised when a window would materialize more points than the budget allows."""


class PunctureRejected(InvalidInputError):
    """Raised when a puncture meets the drilled set or repeats another orbit."""


@dataclass(frozen=True)
class OrbitRep:
    """One orbit representative.

    Periodic representatives carry lattice coordinates and are materialized by
    lattice cosets. Owner-attached representatives (buoys) carry the id of the
    rectangle orbit they belong to and move with that rectangle instead.
    """

    point: Point
    lattice: Optional[LatticePoint] = None
    stabilizer: Optional[DeckElement] = None
    owner: Optional[str] = None

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"point": point_to_json(self.point)}
        if self.lattice is not None:
            payload["lattice"] = [str(self.lattice[0]), str(self.lattice[1])]
        if self.owner is not None:
            payload["owner"] = self.owner
        return payload


@dataclass(frozen=True)
class PointOrbitSet:
    """Finite list of deck-orbit representatives with a role label."""

    label: str
    representatives: tuple[OrbitRep, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.label not in LABELS:
            raise InvalidInputError(f"unknown point-set label {self.label!r}")

    def __len__(self) -> int:
        return len(self.representatives)

    def periodic(self) -> list[OrbitRep]:
        return [r for r in self.representatives if r.lattice is not None]

    def attached(self) -> list[OrbitRep]:
        return [r for r in self.representatives if r.owner is not None]

    def contains(self, os: OrbitSpace, p: Point) -> bool:
        """True when ``p`` lies in the orbit of a periodic representative."""
        return any(os.same_orbit(r.point, p) for r in self.periodic())

    def with_reps(self, reps: Iterable[OrbitRep]) -> "PointOrbitSet":
        return PointOrbitSet(self.label, self.representatives + tuple(reps))

    def to_dict(self) -> dict[str, Any]:
        return {"label": self.label, "representatives": [r.to_dict() for r in self.representatives]}


def _rep_for(os: OrbitSpace, x: LatticePoint) -> OrbitRep:
    point = os.to_eigen(x)
    return OrbitRep(point=point, lattice=x, stabilizer=os.stabilizer_map(x).as_deck_element(os))


def drilled_set(os: OrbitSpace) -> PointOrbitSet:
    """The lift set of the drilled orbit, as one periodic representative."""
    return PointOrbitSet("drilled", (_rep_for(os, os.drill.point),))


def puncture_set(os: OrbitSpace, points: Sequence[LatticePoint]) -> PointOrbitSet:
    """Validated puncture representatives.

    Raises:
        PunctureRejected: if a puncture lies on the drilled orbit or two
            punctures share an orbit.
    """
    reps: list[OrbitRep] = []
    drill = os.drill.point
    drill_cosets = set(os.orbit_cosets(drill))
    for x in points:
        frac = (x[0] - math.floor(x[0]), x[1] - math.floor(x[1]))
        if frac in drill_cosets:
            raise PunctureRejected(f"puncture {x[0]},{x[1]} lies on the drilled orbit")
        for prior in reps:
            assert prior.lattice is not None
            if frac in set(os.orbit_cosets(prior.lattice)):
                raise PunctureRejected(
                    f"punctures {prior.lattice[0]},{prior.lattice[1]} and {x[0]},{x[1]} share an orbit"
                )
        reps.append(_rep_for(os, x))
    logger.info("Validated %d puncture orbits", len(reps))
    return PointOrbitSet("puncture", tuple(reps))


def _int_range(lo: float, hi: float) -> range:
    return range(math.floor(lo) - 1, math.ceil(hi) + 2)


def _coset_points(os: OrbitSpace, r: LatticePoint, w: Window, budget: int) -> list[Point]:
    beta_f = qn_to_float(os.beta)
    beta_u_f = qn_to_float(os.beta_u)
    gap = beta_f - beta_u_f
    s0, s1 = qn_to_float(w.s_lo), qn_to_float(w.s_hi)
    u0, u1 = qn_to_float(w.u_lo), qn_to_float(w.u_hi)
    y_a, y_b = (s0 - u1) / gap, (s1 - u0) / gap
    y_lo, y_hi = min(y_a, y_b), max(y_a, y_b)
    r1, r2 = float(r[0]), float(r[1])

    found: list[Point] = []
    candidates = 0
    for n2 in _int_range(y_lo - r2, y_hi - r2):
        y = r2 + n2
        lo = max(s0 - beta_f * y, u0 - beta_u_f * y)
        hi = min(s1 - beta_f * y, u1 - beta_u_f * y)
        if lo > hi + 2:
            continue
        span = _int_range(lo - r1, hi - r1)
        candidates += len(span)
        if candidates > 4 * budget + 1024:
            raise WindowTooLarge(f"window scan exceeds the point budget of {budget}")
        for n1 in span:
            x = (r[0] + n1, r[1] + n2)
            p = os.to_eigen(x)
            if w.contains(p):
                found.append(p)
    return found


def enumerate_lattice_points(
    os: OrbitSpace,
    reps: Sequence[LatticePoint],
    w: Window,
    point_budget: Optional[int] = None,
) -> list[Point]:
    """All deck images of periodic lattice points inside ``w``, sorted by (s, u)."""
    if w.is_degenerate():
        return []
    budget = resolve_point_budget(point_budget)
    seen: set[Point] = set()
    out: list[Point] = []
    for x in reps:
        for coset in os.orbit_cosets(x):
            for p in _coset_points(os, coset, w, budget):
                if p not in seen:
                    seen.add(p)
                    out.append(p)
                    if len(out) > budget:
                        raise WindowTooLarge(
                            f"window materializes more than {budget} points; "
                            "shrink the window or raise VEER_POINT_BUDGET"
                        )
    out.sort()
    return out


def enumerate_lifts(
    os: OrbitSpace,
    point_set: PointOrbitSet,
    w: Window,
    point_budget: Optional[int] = None,
) -> list[Point]:
    """Deck-orbit points of the periodic representatives of ``point_set`` in ``w``."""
    reps = [r.lattice for r in point_set.periodic() if r.lattice is not None]
    return enumerate_lattice_points(os, reps, w, point_budget)


def rational_point(os: OrbitSpace, x: Sequence[Any]) -> Point:
    return os.to_eigen((Fraction(str(x[0])), Fraction(str(x[1]))))
