"""Buoys: extra slit points that steer the half-diagonals.

Every buoy belongs to one edge-rectangle orbit and is stored in the frame of
that orbit's representative; it only ever bends that orbit's diagonal, so
the buoy set stays finite and equivariant. Two kinds are placed:

* puncture dips, a pair of buoys on the hook side of each puncture that the
  current half-diagonal touches or passes above, until none is left;
* pair buoys, one in each buoy rectangle of an anchor-subrectangle pair
  whose diagonals fail the PL-goal check.
"""

from __future__ import annotations

import logging
from typing import Optional

from anchors.system import AnchorSystem
from core.errors import VerificationFailure
from diagonals.arcs import PLArc
from diagonals.config import BUOY_ROUNDS, BUOY_SLOTS, DIP_FIXPOINT_CAP, DIP_TAU_FLOOR, DIP_TAU_START
from diagonals.pairs import AnchorRect, half_rect, q_rects, rects_meet
from diagonals.system import DiagonalLift, build_pl_diagonals, representatives
from diagonals.tight import SlitConfig, tight_arc
from diagonals.verify import pair_failure, same_color_pairs
from orbitspace.normal_form import apply_lattice_map
from orbitspace.points import OrbitRep, PointOrbitSet, enumerate_lifts
from orbitspace.space import OrbitSpace, Point, Window, point_to_float
from rectangles.enumerate import enumerate_edge_rects
from rectangles.models import EdgeRect, Rect

logger = logging.getLogger(__name__)


class EpsilonUnderflow(VerificationFailure):
    """Raised when an auto-halved scale drops below its floor without success."""


class BuoyPlacer:
    """Buoys per orbit id, grown by dips and pair separation."""

    def __init__(
        self,
        os: OrbitSpace,
        C: PointOrbitSet,
        anchors: AnchorSystem,
        punctures: PointOrbitSet,
        window: Window,
        point_budget: Optional[int] = None,
    ):
        self.os = os
        self.C = C
        self.anchors = anchors
        self.punctures = punctures
        self.window = window
        self.point_budget = point_budget
        edges = enumerate_edge_rects(os, C, window, point_budget)
        self.reps: dict[str, EdgeRect] = representatives(os, edges)
        self.buoys: dict[str, list[Point]] = {oid: [] for oid in self.reps}
        self.dips = 0
        self.pair_buoys = 0

    # -- helpers ---------------------------------------------------------

    def blocked(self, p: Point) -> bool:
        return self.C.contains(self.os, p) or self.punctures.contains(self.os, p)

    def halves(self, oid: str) -> tuple[AnchorRect, AnchorRect]:
        rep = self.reps[oid]
        anchor = self.anchors.anchor(rep)
        return half_rect(rep, anchor, 0), half_rect(rep, anchor, 1)

    def half_arc(self, oid: str, half: AnchorRect, extra: tuple[Point, ...] = ()) -> PLArc:
        slits = tuple(p for p in self.buoys[oid] + list(extra) if half.rect.contains_open(p))
        return tight_arc(SlitConfig(half.rect, (half.corner, half.anchor), slits))

    def _fresh(self, oid: str, p: Point) -> bool:
        return all(q[0] != p[0] for q in self.buoys[oid]) and not self.blocked(p)

    def punctures_in(self, r: Rect) -> list[Point]:
        pts = enumerate_lifts(self.os, self.punctures, Window(r.s_lo, r.s_hi, r.u_lo, r.u_hi), self.point_budget)
        return [p for p in pts if r.contains_open(p)]

    # -- puncture dips ---------------------------------------------------

    @staticmethod
    def _hook_side(half: AnchorRect, arc: PLArc, p: Point) -> bool:
        """``p`` on the arc or between it and the hook."""
        fu = 1 if half.anchor[1] > half.corner[1] else -1
        return (fu * (p[1] - arc.value_at(p[0]))).sign() <= 0

    def dip(self, oid: str, half: AnchorRect, p: Point) -> None:
        """Add two buoys flanking ``p`` on its hook side.

        Raises:
            EpsilonUnderflow: if no scale above ``DIP_TAU_FLOOR`` works.
        """
        r = half.rect
        fu = 1 if half.anchor[1] > half.corner[1] else -1
        tau = DIP_TAU_START
        while tau >= DIP_TAU_FLOOR:
            ds, du = r.width * tau, r.height * tau * fu
            pair = ((p[0] - ds, p[1] - du), (p[0] + ds, p[1] - du))
            if all(r.contains_open(b) and self._fresh(oid, b) for b in pair):
                arc = self.half_arc(oid, half, pair)
                if not self._hook_side(half, arc, p):
                    self.buoys[oid].extend(pair)
                    self.dips += 1
                    return
            tau /= 2
        raise EpsilonUnderflow(f"no dip below puncture {point_to_float(p)} down to tau={float(DIP_TAU_FLOOR):.3g}")

    def dip_to_fixpoint(self) -> int:
        """Dip until no half-diagonal touches or passes above a puncture; returns dips added."""
        if not len(self.punctures):
            return 0
        added = 0
        for _ in range(DIP_FIXPOINT_CAP):
            changed = False
            for oid in sorted(self.reps):
                for half in self.halves(oid):
                    for p in self.punctures_in(half.rect):
                        if self._hook_side(half, self.half_arc(oid, half), p):
                            self.dip(oid, half, p)
                            added += 1
                            changed = True
            if not changed:
                return added
        raise EpsilonUnderflow(f"puncture dips did not settle after {DIP_FIXPOINT_CAP} rounds")

    # -- pair buoys ------------------------------------------------------

    def _slot(self, oid: str, q: Rect) -> Optional[Point]:
        """A free point of ``q`` lying inside one of the owner's anchor subrectangles."""
        halves = self.halves(oid)
        for ts in BUOY_SLOTS:
            for tu in BUOY_SLOTS:
                p = (q.s_lo + q.width * ts, q.u_lo + q.height * tu)
                if any(h.rect.contains_open(p) for h in halves) and self._fresh(oid, p):
                    return p
        return None

    def place_for(self, lift: DiagonalLift, target: Rect) -> bool:
        """Put one buoy of ``lift``'s orbit in ``target`` unless one is there already."""
        g = lift.deck.inverse()
        q = Rect.spanned(
            apply_lattice_map(self.os, g, (target.s_lo, target.u_lo)),
            apply_lattice_map(self.os, g, (target.s_hi, target.u_hi)),
        )
        oid = lift.orbit_id
        if oid not in self.buoys:
            return False
        if any(q.contains_open(b) for b in self.buoys[oid]):
            return False
        p = self._slot(oid, q)
        if p is None:
            logger.debug("No free slot for a buoy of %s", oid)
            return False
        self.buoys[oid].append(p)
        self.pair_buoys += 1
        return True

    def separate_pairs(self) -> int:
        """One round: buoys for every same-color pair failing the PL goals.

        Raises:
            EmptyIntersection: if a required buoy rectangle is empty.
        """
        system = build_pl_diagonals(
            self.os, self.C, self.anchors, self.buoy_set(), self.window, self.punctures, self.point_budget
        )
        lifts = system.materialize(self.window, point_budget=self.point_budget)
        added = 0
        for lower, upper in same_color_pairs(lifts):
            if pair_failure(lower, upper) is None:
                continue
            a1, a2 = self.anchors.anchor(lower.rect), self.anchors.anchor(upper.rect)
            for s1 in (0, 1):
                for s2 in (0, 1):
                    p1, p2 = half_rect(lower.rect, a1, s1), half_rect(upper.rect, a2, s2)
                    if not rects_meet(p1.rect, p2.rect):
                        continue
                    for target in q_rects(p1, p2):
                        if self.place_for(lower if target.owner == 1 else upper, target.rect):
                            added += 1
        return added

    def buoy_set(self) -> PointOrbitSet:
        reps = [OrbitRep(point=p, owner=oid) for oid in sorted(self.buoys) for p in self.buoys[oid]]
        return PointOrbitSet("buoy", tuple(reps))


def place_buoys(
    os: OrbitSpace,
    C: PointOrbitSet,
    anchors: AnchorSystem,
    punctures: PointOrbitSet,
    window: Window,
    point_budget: Optional[int] = None,
    rounds: int = BUOY_ROUNDS,
) -> PointOrbitSet:
    """Owner-attached buoys: puncture dips to a fixpoint, then pair buoys.

    Raises:
        EpsilonUnderflow: if a puncture dip cannot be placed.
        EmptyIntersection: if a pair's buoy rectangle is empty.
    """
    placer = BuoyPlacer(os, C, anchors, punctures, window, point_budget)
    placer.dip_to_fixpoint()
    for n in range(rounds):
        if placer.separate_pairs() == 0:
            break
        placer.dip_to_fixpoint()
        logger.debug("Buoy round %d: %d pair buoys so far", n + 1, placer.pair_buoys)
    buoys = placer.buoy_set()
    logger.info(
        "Placed %d buoys over %d orbits (%d dips, %d pair buoys)",
        len(buoys), len(placer.reps), placer.dips, placer.pair_buoys,
    )
    return buoys
