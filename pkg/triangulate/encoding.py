"""Canonical string encoding of a labelled triangulation.

A breadth-first walk from a chosen tetrahedron and vertex labelling assigns
new tetrahedron numbers in discovery order; crossing face ``f`` of ``t`` into
``t'`` with permutation ``pi`` fixes the labelling of ``t'`` by
``rho_t'(pi(a)) = rho_t(a)``. The encoding is the least string over every
start tetrahedron and all 24 start labellings.
"""

from __future__ import annotations

from itertools import permutations
from typing import Optional

from rectangles.models import EDGE_PAIRS
from triangulate.models import IN, VeeringTriangulation

ALL_LABELLINGS: tuple[tuple[int, ...], ...] = tuple(permutations(range(4)))


def _walk(tri: VeeringTriangulation, start: int, rho0: tuple[int, ...]) -> Optional[str]:
    order = [start]
    rho: dict[int, tuple[int, ...]] = {start: rho0}
    index = {start: 0}
    i = 0
    while i < len(order):
        t = order[i]
        inv = [0, 0, 0, 0]
        for a, b in enumerate(rho[t]):
            inv[b] = a
        for new_face in range(4):
            g = tri.gluings[t][inv[new_face]]
            if g.partner in rho:
                continue
            labels = [0, 0, 0, 0]
            for a in range(4):
                labels[g.perm[a]] = rho[t][a]
            rho[g.partner] = tuple(labels)
            index[g.partner] = len(order)
            order.append(g.partner)
        i += 1
    if len(order) != tri.num_tetrahedra:
        return None

    edge_ids: dict[int, int] = {}
    tokens: list[str] = []
    for t in order:
        r = rho[t]
        inv = [0, 0, 0, 0]
        for a, b in enumerate(r):
            inv[b] = a
        tet = tri.tetrahedra[t]
        glue = []
        for new_face in range(4):
            g = tri.gluings[t][inv[new_face]]
            r2 = rho[g.partner]
            perm = "".join(str(r2[g.perm[inv[v]]]) for v in range(4))
            glue.append(f"{index[g.partner]}.{r2[g.partner_face]}.{perm}")
        edges = []
        for a, b in EDGE_PAIRS:
            cls = tet.edge_class(inv[a], inv[b])
            label = edge_ids.setdefault(cls, len(edge_ids))
            color = tri.edge_colors[cls][0]
            edges.append(f"{label}{color}{tet.angle(inv[a], inv[b])}")
        coorient = "".join("i" if tri.coorientations[t][inv[f]] == IN else "o" for f in range(4))
        tokens.append(f"{'/'.join(glue)}|{','.join(edges)}|{coorient}")
    return f"{tri.num_tetrahedra}:" + ";".join(tokens)


def canonical_encoding(tri: VeeringTriangulation) -> str:
    """Least walk encoding; equal strings mean isomorphic labelled triangulations."""
    best: Optional[str] = None
    for start in range(tri.num_tetrahedra):
        for rho0 in ALL_LABELLINGS:
            code = _walk(tri, start, rho0)
            if code is not None and (best is None or code < best):
                best = code
    return best if best is not None else f"{tri.num_tetrahedra}:"
