"""SVG 1.1 drawing of a scenic graph and routes.

Geometry is written in model coordinates inside a ``scale(1,-1)`` group, so
arc parameters in the file are the graph's own centers and radii.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import quoteattr

from .geometry import TWO_PI, Arc, LineCurve
from .routes import Route
from .scenic_graph import Color, NodeKind, ScenicGraph, Segment

SITE_COLORS = {Color.RED: "#d62728", Color.BLUE: "#1f77b4", Color.LANDMARK: "#9467bd"}
CURVE_COLOR = "#2ca02c"
ROUTE_COLOR = "#e377c2"
CONNECTOR_COLOR = "#7f7f7f"


def _f(v: float) -> str:
    s = format(float(v), ".10g")
    return "0" if s == "-0" else s


def _arc_cmds(arc: Arc, forward: bool) -> list[str]:
    """``A`` commands for ``arc``, walked counterclockwise when ``forward``."""
    r = _f(arc.circle.radius)
    pieces = [arc] if arc.sweep < TWO_PI else list(arc.split(0.5))
    if not forward:
        pieces = pieces[::-1]
    cmds = []
    for piece in pieces:
        x, y = piece.end if forward else piece.start
        large = 1 if piece.sweep > math.pi else 0
        cmds.append(f"A {r} {r} 0 {large} {1 if forward else 0} {_f(x)} {_f(y)}")
    return cmds


def _route_paths(g: ScenicGraph, route: Route) -> tuple[str, str]:
    scenic, dashed = [], []
    pen = None
    for s in route.steps:
        a, b = g.nodes[s.start].coords, g.nodes[s.end].coords
        if not s.scenic:
            dashed.append(f"M {_f(a[0])} {_f(a[1])} L {_f(b[0])} {_f(b[1])}")
            pen = None
            continue
        if pen != s.start:
            scenic.append(f"M {_f(a[0])} {_f(a[1])}")
        e = g.edges[s.edge]
        if isinstance(e.geometry, Segment):
            scenic.append(f"L {_f(b[0])} {_f(b[1])}")
        else:
            scenic.extend(_arc_cmds(e.geometry, forward=(s.start == e.u)))
        pen = s.end
    return " ".join(scenic), " ".join(dashed)


def render_svg(g: ScenicGraph, routes: list[Route] = (), path=None) -> str:
    if not isinstance(g, ScenicGraph):
        raise TypeError("only 2D scenic graphs can be rendered; export higher-dimensional "
                        "results as JSON (flats command) instead")
    box = g.box
    mx = 0.05 * (box.xmax - box.xmin)
    my = 0.05 * (box.ymax - box.ymin)
    vx, vy = box.xmin - mx, -(box.ymax + my)
    vw, vh = box.xmax - box.xmin + 2 * mx, box.ymax - box.ymin + 2 * my
    unit = 0.002 * box.diagonal
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_f(vx)} {_f(vy)} {_f(vw)} {_f(vh)}" width="800" height="{_f(800 * vh / vw)}">',
        '<g transform="scale(1,-1)" fill="none" stroke-linecap="round" stroke-linejoin="round">',
        f'<rect class="box" x="{_f(box.xmin)}" y="{_f(box.ymin)}" width="{_f(box.xmax - box.xmin)}" '
        f'height="{_f(box.ymax - box.ymin)}" stroke="#000000" stroke-width="{_f(unit)}"/>',
    ]
    for c in g.curves:
        edges = g.curve_edges(c.id)
        if not edges:
            continue
        if isinstance(c.geometry, LineCurve):
            a, b = edges[0].geometry.start, edges[-1].geometry.end
            out.append(f'<line class="curve" data-curve="{c.id}" x1="{_f(a[0])}" y1="{_f(a[1])}" '
                       f'x2="{_f(b[0])}" y2="{_f(b[1])}" stroke="{CURVE_COLOR}" stroke-width="{_f(unit)}"/>')
        else:
            d = []
            pen = None
            for e in edges:
                if pen != e.u:
                    x, y = g.nodes[e.u].coords
                    d.append(f"M {_f(x)} {_f(y)}")
                d.extend(_arc_cmds(e.geometry, True))
                pen = e.v
            out.append(f'<path class="curve" data-curve="{c.id}" d="{" ".join(d)}" '
                       f'stroke="{CURVE_COLOR}" stroke-width="{_f(unit)}"/>')
    for r in routes:
        scenic, dashed = _route_paths(g, r)
        name = quoteattr(r.algorithm)
        if scenic:
            out.append(f'<path class="route" data-algorithm={name} d="{scenic}" '
                       f'stroke="{ROUTE_COLOR}" stroke-width="{_f(3 * unit)}"/>')
        if dashed:
            out.append(f'<path class="connector" data-algorithm={name} d="{dashed}" '
                       f'stroke="{CONNECTOR_COLOR}" stroke-width="{_f(1.5 * unit)}" '
                       f'stroke-dasharray="{_f(6 * unit)} {_f(4 * unit)}"/>')
    for n in g.nodes:
        if n.kind is NodeKind.INTERSECTION:
            out.append(f'<circle class="node" data-node="{n.id}" cx="{_f(n.coords[0])}" '
                       f'cy="{_f(n.coords[1])}" r="{_f(3 * unit)}" fill="#000000"/>')
    for p in g.points:
        out.append(f'<circle class="site {p.color.value}" data-site="{p.id}" cx="{_f(p.coords[0])}" '
                   f'cy="{_f(p.coords[1])}" r="{_f(5 * unit)}" fill="{SITE_COLORS[p.color]}"/>')
    out += ["</g>", "</svg>", ""]
    text = "\n".join(out)
    if path is not None:
        from .serialize import write_atomic
        write_atomic(path, text)
    return text
