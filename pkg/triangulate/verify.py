"""Checks of the taut, transverse-taut and veering conditions.

Each check returns a ``CheckReport``; a failed property becomes a violation
with the offending tetrahedron or edge class as witness.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import networkx as nx

from core.verification import CheckReport
from rectangles.models import BLUE, EDGE_PAIRS, RED
from triangulate.models import IN, PI, VeeringTriangulation, edge_degrees, invert_perm

logger = logging.getLogger(__name__)

EQUATOR: tuple[tuple[int, int], ...] = ((0, 3), (3, 2), (2, 1), (1, 0))
EQUATOR_COLORS: tuple[str, ...] = (RED, BLUE, RED, BLUE)


@dataclass
class VeeringReport:
    checks: dict[str, CheckReport] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed_checks(self) -> list[str]:
        return [name for name, c in self.checks.items() if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": {name: c.to_dict() for name, c in self.checks.items()},
        }


def check_gluings(tri: VeeringTriangulation) -> CheckReport:
    """Gluings form a fixed-point-free involution."""
    report = CheckReport("gluing_involution")
    for t, row in enumerate(tri.gluings):
        for f, g in enumerate(row):
            report.count()
            if (g.partner, g.partner_face) == (t, f):
                report.add("fixed_point", {"tet": t, "face": f})
                continue
            if not (0 <= g.partner < tri.num_tetrahedra) or g.perm[f] != g.partner_face:
                report.add("bad_target", {"tet": t, "face": f})
                continue
            back = tri.gluings[g.partner][g.partner_face]
            if (back.partner, back.partner_face, back.perm) != (t, f, invert_perm(g.perm)):
                report.add("not_involutive", {"tet": t, "face": f})
    return report


def _incidence_graph(tri: VeeringTriangulation) -> nx.Graph:
    """Tetra-edge incidences joined across every face containing them."""
    graph = nx.Graph()
    for t, tet in enumerate(tri.tetrahedra):
        for a, b in EDGE_PAIRS:
            graph.add_node((t, a, b))
        for f, g in enumerate(tri.gluings[t]):
            for a, b in EDGE_PAIRS:
                if f in (a, b):
                    continue
                a2, b2 = sorted((g.perm[a], g.perm[b]))
                graph.add_edge((t, a, b), (g.partner, a2, b2))
    return graph


def check_edge_classes(tri: VeeringTriangulation) -> CheckReport:
    """Edge labels agree with the classes the gluings generate."""
    report = CheckReport("edge_classes")
    components = list(nx.connected_components(_incidence_graph(tri)))
    seen: set[int] = set()
    for comp in components:
        report.count()
        labels = {tri.tetrahedra[t].edge_class(a, b) for t, a, b in comp}
        if len(labels) != 1:
            report.add("mixed_component", sorted(labels))
            continue
        label = labels.pop()
        if label in seen:
            report.add("split_class", label)
        seen.add(label)
    if len(components) != tri.num_tetrahedra:
        report.add("euler", {"edges": len(components), "tetrahedra": tri.num_tetrahedra})
    if tri.num_edges != tri.num_tetrahedra:
        report.add("euler", {"edges": tri.num_edges, "tetrahedra": tri.num_tetrahedra})
    dual = nx.Graph()
    dual.add_nodes_from(range(tri.num_tetrahedra))
    dual.add_edges_from((t, g.partner) for t, row in enumerate(tri.gluings) for g in row)
    if tri.num_tetrahedra and not nx.is_connected(dual):
        report.add("disconnected", nx.number_connected_components(dual))
    return report


def check_taut(tri: VeeringTriangulation) -> CheckReport:
    """Exactly two pi angles per tetrahedron, on the top and bottom edges."""
    report = CheckReport("taut")
    for t, tet in enumerate(tri.tetrahedra):
        report.count()
        pis = [pair for pair, angle in zip(EDGE_PAIRS, tet.angles) if angle == PI]
        if sorted(pis) != sorted((tuple(tet.top_edge), tuple(tet.bottom_edge))):
            report.add("pi_angles", t, f"pi angles at {pis}")
    return report


def check_angle_sums(tri: VeeringTriangulation) -> CheckReport:
    """Angle sum 2 pi around every edge class."""
    report = CheckReport("angle_sum")
    tops = [0] * tri.num_edges
    bottoms = [0] * tri.num_edges
    for tet in tri.tetrahedra:
        tops[tet.edge_class(*tet.top_edge)] += 1
        bottoms[tet.edge_class(*tet.bottom_edge)] += 1
    for cls, deg in enumerate(edge_degrees(tri)):
        report.count()
        if deg["pi"] != 2:
            report.add("pi_count", cls, f"{deg['pi']} pi incidences")
        elif (tops[cls], bottoms[cls]) != (1, 1):
            report.add("top_bottom", cls, f"top {tops[cls]} times, bottom {bottoms[cls]} times")
    return report


def check_transverse_taut(tri: VeeringTriangulation) -> CheckReport:
    """Coorientations flip across faces and split at every zero-angle edge."""
    report = CheckReport("transverse_taut")
    for t, tet in enumerate(tri.tetrahedra):
        coorient = tri.coorientations[t]
        for (a, b), angle in zip(EDGE_PAIRS, tet.angles):
            if angle == PI:
                continue
            report.count()
            c, d = (v for v in range(4) if v not in (a, b))
            inward = (coorient[c] == IN) + (coorient[d] == IN)
            if inward != 1:
                report.add("zero_edge", {"tet": t, "edge": [a, b]}, f"{inward} faces cooriented in")
        for f, g in enumerate(tri.gluings[t]):
            other = tri.coorientations[g.partner][g.partner_face]
            if (coorient[f] == IN) == (other == IN):
                report.add("face_flip", {"tet": t, "face": f})
    return report


def check_veering_colors(tri: VeeringTriangulation) -> CheckReport:
    """Equator colors run red, blue, red, blue from the top edge's first vertex."""
    report = CheckReport("veering")
    for t, tet in enumerate(tri.tetrahedra):
        report.count()
        colors = tuple(tri.edge_colors[tet.edge_class(a, b)] for a, b in EQUATOR)
        if colors != EQUATOR_COLORS:
            report.add("equator_colors", t, ",".join(colors))
    return report


def verify_veering(tri: VeeringTriangulation) -> VeeringReport:
    """Run every check; a failure is reported, never raised."""
    report = VeeringReport()
    for check in (
        check_gluings,
        check_edge_classes,
        check_taut,
        check_angle_sums,
        check_transverse_taut,
        check_veering_colors,
    ):
        result = check(tri)
        report.checks[result.name] = result
    logger.info("Veering checks: %s", "pass" if report.passed else ",".join(report.failed_checks()))
    return report
