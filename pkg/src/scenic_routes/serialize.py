"""JSON documents for graphs, route reports and flat lattices.

All documents are written with sorted keys and two-space indentation, so
identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from .errors import ConfigError
from .flats import FlatLattice, FlatRoute
from .geometry import Arc, Box, CircleCurve, LineCurve, Tolerance
from .metrics import RouteMetrics, requirement_order, route_metrics, sort_key
from .routes import Leg, Route, Step
from .scenic_graph import (
    ColoredPoint,
    Edge,
    Node,
    NodeKind,
    ScenicCurve,
    ScenicGraph,
    Segment,
)

GRAPH_TYPE = "scenic-graph"
REPORT_TYPE = "scenic-report"
LATTICE_TYPE = "flat-lattice"


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _pt(p) -> list[float]:
    return [float(p[0]), float(p[1])]


def _curve_to_dict(c: ScenicCurve) -> dict:
    out: dict[str, Any] = {"id": c.id, "pairs": [list(p) for p in c.pairs], "implicit": list(c.implicit)}
    if isinstance(c.geometry, LineCurve):
        out.update(kind="line", anchor=_pt(c.geometry.anchor), direction=_pt(c.geometry.direction))
    else:
        out.update(kind="circle", center=_pt(c.geometry.center), radius=c.geometry.radius)
    return out


def _geom_to_dict(g: Segment | Arc) -> dict:
    if isinstance(g, Segment):
        return {"type": "segment", "start": _pt(g.start), "end": _pt(g.end)}
    return {"type": "arc", "center": _pt(g.circle.center), "radius": g.circle.radius,
            "start_angle": g.start_angle, "sweep": g.sweep}


def graph_to_dict(g: ScenicGraph) -> dict:
    return {
        "type": GRAPH_TYPE,
        "version": 1,
        "box": list(g.box.as_tuple()),
        "tolerance": {"eps_abs": g.tol.eps_abs, "scale": g.tol.scale},
        "points": [{"id": p.id, "x": p.coords[0], "y": p.coords[1], "color": p.color.value,
                    "weight": p.weight} for p in g.points],
        "pairs": [list(p) for p in g.all_pairs],
        "curves": [_curve_to_dict(c) for c in g.curves],
        "nodes": [{"id": n.id, "x": n.coords[0], "y": n.coords[1], "kind": n.kind.value,
                   "curves": list(n.curves)} for n in g.nodes],
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "curve": e.curve, "length": e.length,
                   "pairs": [list(p) for p in e.pairs], "geometry": _geom_to_dict(e.geometry)}
                  for e in g.edges],
        "flags": list(g.flags),
        "summary": g.summary(),
    }


def _pairs(items) -> tuple:
    return tuple(tuple(p) for p in items)


def graph_from_dict(doc: dict) -> ScenicGraph:
    if not isinstance(doc, dict) or doc.get("type") != GRAPH_TYPE:
        raise ConfigError("not a scenic graph document (run build-graph first)", "/type")
    try:
        curves = []
        for c in doc["curves"]:
            if c["kind"] == "line":
                geom = LineCurve(tuple(c["anchor"]), tuple(c["direction"]))
            else:
                geom = CircleCurve(tuple(c["center"]), c["radius"])
            curves.append(ScenicCurve(c["id"], geom, _pairs(c["pairs"]), tuple(c["implicit"])))
        nodes = [Node(n["id"], (n["x"], n["y"]), NodeKind(n["kind"]), tuple(n["curves"]))
                 for n in doc["nodes"]]
        edges = []
        for e in doc["edges"]:
            gd = e["geometry"]
            if gd["type"] == "segment":
                geom = Segment(tuple(gd["start"]), tuple(gd["end"]))
            else:
                geom = Arc(CircleCurve(tuple(gd["center"]), gd["radius"]), gd["start_angle"], gd["sweep"])
            edges.append(Edge(e["id"], e["u"], e["v"], e["curve"], geom, e["length"], _pairs(e["pairs"])))
        points = [ColoredPoint(p["id"], (p["x"], p["y"]), p["color"], p["weight"]) for p in doc["points"]]
        tol = Tolerance(doc["tolerance"]["eps_abs"], doc["tolerance"]["scale"])
        return ScenicGraph(nodes, edges, Box(*doc["box"]), curves, points,
                           [tuple(p) for p in doc["pairs"]], tol, list(doc.get("flags", [])))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed graph document: {exc}") from None


def route_to_dict(route: Route, metrics: RouteMetrics) -> dict:
    return {
        "algorithm": route.algorithm,
        "flags": list(route.flags),
        "closed": route.closed,
        "nodes": route.nodes,
        "steps": [{"from": s.start, "to": s.end, "edge": s.edge, "scenic": s.scenic,
                   "length": s.length} for s in route.steps],
        "legs": [{"from": l.start, "to": l.end, "first": l.first, "stop": l.stop,
                  "skipped": l.skipped} for l in route.legs],
        "metrics": metrics.to_dict(),
    }


def route_from_dict(doc: dict) -> Route:
    try:
        steps = [Step(s["from"], s["to"], s["edge"], s["length"]) for s in doc["steps"]]
        legs = [Leg(l["from"], l["to"], l["first"], l["stop"], l["skipped"]) for l in doc.get("legs", [])]
        return Route(doc["algorithm"], steps, legs, list(doc.get("flags", [])))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed route entry: {exc}") from None


def report_to_dict(g: ScenicGraph, routes: list[Route], order: str = "sec3",
                   errors: dict[str, str] | None = None) -> dict:
    reqs = requirement_order(order)
    rows = []
    metrics = {}
    for r in routes:
        m = route_metrics(g, r)
        metrics[r.algorithm] = m
        rows.append({"algorithm": r.algorithm, **m.to_dict()})
    ranking = sorted(metrics, key=lambda a: (sort_key(metrics[a], reqs), a))
    verdicts = []
    names = [r.algorithm for r in routes]
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            ka, kb = sort_key(metrics[a], reqs), sort_key(metrics[b], reqs)
            verdicts.append({"a": a, "b": b, "preferred": a if ka < kb else b if kb < ka else None})
    return {
        "type": REPORT_TYPE,
        "version": 1,
        "order": order,
        "requirements": [r.value for r in reqs],
        "graph": g.summary(),
        "metrics": rows,
        "routes": [route_to_dict(r, metrics[r.algorithm]) for r in routes],
        "ranking": ranking,
        "verdicts": verdicts,
        "errors": [{"algorithm": k, "error": v} for k, v in sorted((errors or {}).items())],
    }


def _arr(a: np.ndarray) -> list:
    return [float(x) for x in np.asarray(a).ravel()] if np.ndim(a) <= 1 else [_arr(r) for r in a]


def lattice_to_dict(lat: FlatLattice, route: FlatRoute | None = None) -> dict:
    doc = {
        "type": LATTICE_TYPE,
        "version": 1,
        "dim": lat.dim,
        "box": {"lo": _arr(lat.box[0]), "hi": _arr(lat.box[1])},
        "pairs": [list(p) for p in lat.pairs],
        "flats": [{
            "id": f.id,
            "level": f.level,
            "dim": f.dim,
            "base": _arr(f.base),
            "basis": _arr(f.basis) if f.dim else [],
            "generators": sorted(list(p) for p in f.generators),
            "representative": _arr(f.representative),
            "incidence": lat.incidence[f.id],
        } for f in lat.flats],
        "edges": [list(e) for e in lat.edges],
        "summary": {
            "flats": len(lat.flats),
            "by_dim": {str(k): sum(f.dim == k for f in lat.flats) for k in range(lat.dim)},
        },
    }
    if route is not None:
        doc["route"] = {
            "parts": route.parts,
            "sequence": route.sequence,
            "hops": [{"from": h.src, "to": h.dst, "kind": h.kind, "length": h.length} for h in route.hops],
        }
    return doc
