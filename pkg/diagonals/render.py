"""SVG figures of edge rectangles with their diagonals drawn over them."""

from __future__ import annotations

from typing import Optional, Sequence

from diagonals.arcs import PLArc
from diagonals.config import SVG_COLORS, SVG_MARGIN, SVG_SIZE
from diagonals.system import DiagonalSystem
from orbitspace.space import Point, Window, point_to_float
from rectangles.models import EdgeRect


def render_svg(
    rects: Sequence[EdgeRect],
    diagonals: Sequence[PLArc],
    points: Sequence[Point] = (),
    size: int = SVG_SIZE,
    leaves: bool = True,
) -> str:
    """One SVG document; ``diagonals[i]`` is drawn in the color of ``rects[i]``.

    Extra ``points`` (punctures, buoys) are drawn as small dots. With
    ``leaves`` the stable leaf through every rectangle corner is drawn as a
    dashed vertical line.
    """
    corners = [point_to_float(c) for e in rects for c in e.corners]
    corners += [point_to_float(p) for p in points]
    if not corners:
        return f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}"/>\n'
    s_lo = min(c[0] for c in corners)
    s_hi = max(c[0] for c in corners)
    u_lo = min(c[1] for c in corners)
    u_hi = max(c[1] for c in corners)
    span = max(s_hi - s_lo, u_hi - u_lo) or 1.0
    scale = (size - 2 * SVG_MARGIN) / span

    def to_svg(s: float, u: float) -> tuple[float, float]:
        return (SVG_MARGIN + (s - s_lo) * scale, size - SVG_MARGIN - (u - u_lo) * scale)

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    if leaves:
        for s in sorted({c[0] for c in corners[: 4 * len(rects)]}):
            x, _ = to_svg(s, u_lo)
            lines.append(
                f'<line x1="{x:.1f}" y1="0" x2="{x:.1f}" y2="{size}" stroke="#999" '
                f'stroke-dasharray="3,3" stroke-width="0.5"/>'
            )
    for e in rects:
        (x0, y0), (x1, y1) = to_svg(*point_to_float(e.west)), to_svg(*point_to_float(e.east))
        stroke = SVG_COLORS.get(e.color, "#555")
        lines.append(
            f'<rect x="{min(x0, x1):.1f}" y="{min(y0, y1):.1f}" width="{abs(x1 - x0):.1f}" '
            f'height="{abs(y1 - y0):.1f}" fill="none" stroke="{stroke}" stroke-opacity="0.35"/>'
        )
    for e, arc in zip(rects, diagonals):
        pts = " ".join(f"{x:.1f},{y:.1f}" for x, y in (to_svg(*n) for n in arc.float_nodes()))
        lines.append(
            f'<polyline points="{pts}" fill="none" stroke="{SVG_COLORS.get(e.color, "#555")}" stroke-width="1.5"/>'
        )
    for p in points:
        x, y = to_svg(*point_to_float(p))
        lines.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="2.5" fill="#222"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_system(system: DiagonalSystem, window: Window, points: Optional[Sequence[Point]] = None) -> str:
    """``render_svg`` over every diagonal lift of ``system`` in ``window``."""
    lifts = system.materialize(window)
    return render_svg([d.rect for d in lifts], [d.arc for d in lifts], points or ())
