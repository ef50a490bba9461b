"""Canonical forms of finite point sets under the deck group.

For a set ``P`` with at least two points, the normal form scales ``P`` by
``A^k`` so that its stable width lands in ``[1, lambda)`` and then translates
by an integer vector so that its westernmost point has lattice coordinates in
``[0, 1)^2``. Two sets are deck-equivalent exactly when their keys agree, and
the deck element between them is unique.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from typing import Optional, Sequence

from core.errors import InvariantBreach
from exactfield.quadnum import QuadNum, qn_to_float
from orbitspace.space import DeckElement, LatticeMap, OrbitSpace, Point

logger = logging.getLogger(__name__)

NormalKey = tuple[tuple[QuadNum, QuadNum], ...]


class OrbitAmbiguity(InvariantBreach):
    """Raised when matching normal forms do not yield a unique deck element."""


def _scale_exponent(os: OrbitSpace, width: QuadNum) -> int:
    """The ``k`` with ``lambda^k * width`` in ``[1, lambda)``."""
    k = -math.floor(math.log(qn_to_float(width)) / math.log(os.lam_float))
    scaled = os.lam ** k * width
    while scaled < 1:
        k += 1
        scaled = scaled * os.lam
    while scaled >= os.lam:
        k -= 1
        scaled = scaled / os.lam
    return k


def _floor_pair(x: tuple[QuadNum, QuadNum]) -> tuple[int, int]:
    return (x[0].floor(), x[1].floor())


def normalize_points(os: OrbitSpace, pts: Sequence[Point]) -> tuple[NormalKey, LatticeMap]:
    """Deck-canonical key of a point set and the lattice map realizing it."""
    if not pts:
        raise InvariantBreach("cannot normalize an empty point set")
    lattice = [os.to_lattice_qn(p) for p in pts]
    if len(pts) == 1:
        return _normalize_single(os, lattice[0])

    s_values = [p[0] for p in pts]
    width = max(s_values) - min(s_values)
    if width.sign() <= 0:
        raise InvariantBreach("points of a normalizable set must have distinct stable coordinates")
    k = _scale_exponent(os, width)
    scale = os.lattice_map(k, (0, 0))
    images = [scale.apply(x) for x in lattice]
    west = min(images, key=lambda y: os.s_of(y))
    fl = _floor_pair(west)
    shift = (-fl[0], -fl[1])
    g = os.lattice_map(k, shift)
    key = tuple(sorted((y[0] + shift[0], y[1] + shift[1]) for y in images))
    return key, g


def _normalize_single(os: OrbitSpace, x: tuple[QuadNum, QuadNum]) -> tuple[NormalKey, LatticeMap]:
    """Lexicographically least coset representative in ``[0, 1)^2``.

    Only periodic points have finitely many cosets; other points normalize
    by translation alone.
    """
    if not (x[0].is_rational() and x[1].is_rational()):
        fl = _floor_pair(x)
        g = os.lattice_map(0, (-fl[0], -fl[1]))
        return (g.apply(x),), g
    best: Optional[tuple[tuple[QuadNum, QuadNum], LatticeMap]] = None
    period = os.period_of((x[0].a, x[1].a))
    for j in range(period):
        y = os.lattice_map(j, (0, 0)).apply(x)
        fl = _floor_pair(y)
        g = os.lattice_map(j, (-fl[0], -fl[1]))
        z = g.apply(x)
        if best is None or z < best[0]:
            best = (z, g)
    assert best is not None
    return (best[0],), best[1]


def find_deck_element(os: OrbitSpace, P: Sequence[Point], Q: Sequence[Point]) -> Optional[LatticeMap]:
    """The deck element carrying point set ``P`` onto ``Q``, or ``None``.

    Raises:
        OrbitAmbiguity: if the keys agree but the composed map does not carry
            ``P`` onto ``Q`` exactly.
    """
    if len(P) != len(Q):
        return None
    key_p, g_p = normalize_points(os, P)
    key_q, g_q = normalize_points(os, Q)
    if key_p != key_q:
        return None
    h = g_q.inverse().compose(g_p)
    image = {os.to_eigen(h.apply(os.to_lattice_qn(p))) for p in P}
    if image != set(Q):
        raise OrbitAmbiguity(f"normal forms agree but {h} does not carry the sets onto each other")
    return h


def deck_between(os: OrbitSpace, P: Sequence[Point], Q: Sequence[Point]) -> Optional[DeckElement]:
    """``find_deck_element`` as an eigen-coordinate deck element."""
    h = find_deck_element(os, P, Q)
    return None if h is None else h.as_deck_element(os)


def apply_lattice_map(os: OrbitSpace, g: LatticeMap, p: Point) -> Point:
    return os.to_eigen(g.apply(os.to_lattice_qn(p)))


def orbit_id_of(key: NormalKey) -> str:
    """Short stable id for a normal key, used to label orbits in documents."""
    flat = [[c.to_json() for c in pair] for pair in key]
    digest = hashlib.sha1(json.dumps(flat, sort_keys=True).encode("utf-8")).hexdigest()
    return "E" + digest[:12]


def orbit_id(os: OrbitSpace, pts: Sequence[Point]) -> tuple[str, LatticeMap]:
    key, g = normalize_points(os, pts)
    return orbit_id_of(key), g
