"""Scenic curves for colored sites and the arrangement graph they induce.

A site pair ``(r, b)`` with weights ``w1, w2`` has scenic points where
``w1 * |p - b| == w2 * |p - r|``.  Equal weights give the perpendicular
bisector, unequal weights an Apollonius circle.  :func:`build_graph` cuts
every curve at its crossings with the other curves (and at the box) and
returns the resulting multigraph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import CapExceeded, ConfigError, DegeneratePairError
from .geometry import (
    TWO_PI,
    Arc,
    Box,
    CircleCurve,
    Curve,
    LineCurve,
    Point2,
    Tolerance,
    arc_length,
    check_point,
    curves_coincide,
    intersect_curves,
    intersect_line_circle,
    normalize_angle,
)

PairId = tuple[int, int]

DEFAULT_MAX_CURVES = 1000


class Color(str, Enum):
    RED = "red"
    BLUE = "blue"
    LANDMARK = "landmark"


class Mode(str, Enum):
    BIPARTITE = "bipartite"
    ALL_PAIRS = "landmark"


class NodeKind(str, Enum):
    INTERSECTION = "intersection"
    BOUNDARY_LEAF = "boundary_leaf"
    CIRCLE_ANCHOR = "circle_anchor"


@dataclass(frozen=True)
class ColoredPoint:
    id: int
    coords: Point2
    color: Color
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coords", check_point(self.coords))
        object.__setattr__(self, "color", Color(self.color))
        if not (self.weight > 0 and math.isfinite(self.weight)):
            raise ConfigError("weight must be positive")


@dataclass(frozen=True)
class Config:
    points: tuple[ColoredPoint, ...]
    mode: Mode = Mode.BIPARTITE
    box: Box | None = None
    expand: float = 1.5
    eps_abs: float = 1e-9
    max_curves: int = DEFAULT_MAX_CURVES

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "mode", Mode(self.mode))
        ids = [p.id for p in self.points]
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate point ids", "/points")
        if self.expand < 1:
            raise ConfigError("expand factor must be >= 1", "/box/expand")
        if self.mode is Mode.BIPARTITE:
            if not self.reds or not self.blues:
                raise ConfigError("bipartite mode needs at least one red and one blue point", "/points")
            if any(p.color is Color.LANDMARK for p in self.points):
                raise ConfigError("landmark points are only allowed in landmark mode", "/points")
        elif len(self.points) < 2:
            raise ConfigError("landmark mode needs at least two points", "/points")
        if self.box is not None:
            for i, p in enumerate(self.points):
                if not self.box.contains(p.coords):
                    raise ConfigError("point lies outside the explicit box", f"/points/{i}")

    @property
    def reds(self) -> list[ColoredPoint]:
        return [p for p in self.points if p.color is Color.RED]

    @property
    def blues(self) -> list[ColoredPoint]:
        return [p for p in self.points if p.color is Color.BLUE]

    def resolve_box(self) -> Box:
        if self.box is not None:
            return self.box
        return Box.around([p.coords for p in self.points], self.expand)

    def tolerance(self) -> Tolerance:
        return Tolerance(self.eps_abs, self.resolve_box().diagonal)

    def site_pairs(self) -> list[tuple[ColoredPoint, ColoredPoint]]:
        if self.mode is Mode.BIPARTITE:
            return [(r, b) for r in self.reds for b in self.blues]
        pts = sorted(self.points, key=lambda p: p.id)
        return list(combinations(pts, 2))

    def all_pairs(self) -> list[PairId]:
        return [(a.id, b.id) for a, b in self.site_pairs()]

    def centroid(self) -> Point2:
        arr = np.array([p.coords for p in self.points])
        c = arr.mean(axis=0)
        return (float(c[0]), float(c[1]))


@dataclass(frozen=True)
class ScenicCurve:
    id: int
    geometry: Curve
    pairs: tuple[PairId, ...]
    # a|p|^2 + bx*x + by*y + c == 0 on the curve, from the first generating pair
    implicit: tuple[float, float, float, float]

    @property
    def is_line(self) -> bool:
        return isinstance(self.geometry, LineCurve)


@dataclass(frozen=True)
class Segment:
    start: Point2
    end: Point2


@dataclass(frozen=True)
class Node:
    id: int
    coords: Point2
    kind: NodeKind
    curves: tuple[int, ...]


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    curve: int
    geometry: Segment | Arc
    length: float
    pairs: tuple[PairId, ...]

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, node: int) -> int:
        return self.v if node == self.u else self.u


@dataclass
class ScenicGraph:
    nodes: list[Node]
    edges: list[Edge]
    box: Box
    curves: list[ScenicCurve]
    points: list[ColoredPoint]
    all_pairs: list[PairId]
    tol: Tolerance
    flags: list[str] = field(default_factory=list)

    def __post_init__(self):
        self._incident: list[list[int]] = [[] for _ in self.nodes]
        for e in self.edges:
            self._incident[e.u].append(e.id)
            if e.v != e.u:
                self._incident[e.v].append(e.id)

    def incident(self, node: int) -> list[int]:
        return self._incident[node]

    def degree(self, node: int) -> int:
        return sum(2 if self.edges[e].is_loop else 1 for e in self._incident[node])

    def curve_edges(self, curve_id: int) -> list[Edge]:
        return [e for e in self.edges if e.curve == curve_id]

    def intersection_nodes(self) -> list[Node]:
        return [n for n in self.nodes if n.kind is NodeKind.INTERSECTION]

    def summary(self) -> dict:
        return {
            "red": sum(p.color is Color.RED for p in self.points),
            "blue": sum(p.color is Color.BLUE for p in self.points),
            "landmarks": sum(p.color is Color.LANDMARK for p in self.points),
            "curves": len(self.curves),
            "intersections": len(self.intersection_nodes()),
            "nodes": len(self.nodes),
            "edges": len(self.edges),
            "pairs": len(self.all_pairs),
        }


def _implicit(r: ColoredPoint, b: ColoredPoint, equal: bool) -> tuple[float, float, float, float]:
    w1, w2 = (1.0, 1.0) if equal else (r.weight, b.weight)
    (rx, ry), (bx, by) = r.coords, b.coords
    a = (w1 - w2) * (w1 + w2)
    lx = -2.0 * (w1 * w1 * bx - w2 * w2 * rx)
    ly = -2.0 * (w1 * w1 * by - w2 * w2 * ry)
    c = w1 * w1 * (bx * bx + by * by) - w2 * w2 * (rx * rx + ry * ry)
    norm = math.hypot(lx, ly) or 1.0
    return (a / norm, lx / norm, ly / norm, c / norm)


def _equal_weights(w1: float, w2: float, tol: Tolerance) -> bool:
    return abs(w1 - w2) <= tol.eps_abs * max(w1, w2)


def scenic_curve(r: ColoredPoint, b: ColoredPoint, tol: Tolerance = Tolerance()) -> Curve:
    """Locus of points seeing ``r`` and ``b`` with equal apparent weight."""
    if math.dist(r.coords, b.coords) <= tol.eff:
        raise DegeneratePairError(f"degenerate pair: sites {r.id} and {b.id} coincide")
    (rx, ry), (bx, by) = r.coords, b.coords
    if _equal_weights(r.weight, b.weight, tol):
        mid = (0.5 * (rx + bx), 0.5 * (ry + by))
        return LineCurve.through(mid, (-(by - ry), bx - rx))
    w1, w2 = r.weight, b.weight
    # center = (w2^2 r - w1^2 b) / (w2^2 - w1^2), written to avoid cancellation
    denom = (w2 - w1) * (w2 + w1)
    cx = (w2 * w2 * rx - w1 * w1 * bx) / denom
    cy = (w2 * w2 * ry - w1 * w1 * by) / denom
    radius = w1 * w2 * math.dist(r.coords, b.coords) / abs(denom)
    return CircleCurve((cx + 0.0, cy + 0.0), radius)


def build_curves(cfg: Config) -> list[ScenicCurve]:
    pairs = cfg.site_pairs()
    if len(pairs) > cfg.max_curves:
        raise CapExceeded(
            f"{len(pairs)} site pairs exceed max_curves={cfg.max_curves}; the number of "
            "scenic curves grows quadratically in the site count (order n^4 lines for n "
            "points when every pair is used), so reduce the configuration or raise the cap")
    tol = cfg.tolerance()
    merged: list[tuple[Curve, list[PairId], tuple]] = []
    for r, b in pairs:
        geom = scenic_curve(r, b, tol)
        pid = (r.id, b.id)
        for geom0, pids, _ in merged:
            if curves_coincide(geom0, geom, tol):
                pids.append(pid)
                break
        else:
            equal = isinstance(geom, LineCurve)
            merged.append((geom, [pid], _implicit(r, b, equal)))
    return [ScenicCurve(i, g, tuple(p), imp) for i, (g, p, imp) in enumerate(merged)]


def _refine(p: Point2, f1, f2, max_step: float) -> Point2:
    """Polish an intersection with Newton steps on the two implicit curve equations."""
    x, y = p
    for _ in range(3):
        a1, b1, c1, d1 = f1
        a2, b2, c2, d2 = f2
        r2 = x * x + y * y
        v1 = a1 * r2 + b1 * x + c1 * y + d1
        v2 = a2 * r2 + b2 * x + c2 * y + d2
        g1 = (2 * a1 * x + b1, 2 * a1 * y + c1)
        g2 = (2 * a2 * x + b2, 2 * a2 * y + c2)
        det = g1[0] * g2[1] - g1[1] * g2[0]
        if abs(det) <= 1e-6 * math.hypot(*g1) * math.hypot(*g2):
            break
        dx = (-v1 * g2[1] + v2 * g1[1]) / det
        dy = (-g1[0] * v2 + g2[0] * v1) / det
        if math.hypot(dx, dy) > max_step:
            break
        x, y = x + dx, y + dy
        if dx == 0 and dy == 0:
            break
    return (x, y)


def _on_curve_mask(curve: Curve, P: np.ndarray, eps: float) -> np.ndarray:
    if len(P) == 0:
        return np.zeros(0, dtype=bool)
    if isinstance(curve, LineCurve):
        n = np.array(curve.normal)
        d = np.abs((P - np.array(curve.anchor)) @ n)
    else:
        d = np.abs(np.hypot(P[:, 0] - curve.center[0], P[:, 1] - curve.center[1]) - curve.radius)
    return d <= eps


def curve_intersections(curves: Sequence[ScenicCurve], box: Box, tol: Tolerance
                        ) -> list[tuple[Point2, frozenset[int]]]:
    """All pairwise curve crossings inside ``box`` (unmerged)."""
    eps = tol.eff
    raw = []
    for ci, cj in combinations(curves, 2):
        for p in intersect_curves(ci.geometry, cj.geometry, tol):
            p = _refine(p, ci.implicit, cj.implicit, max_step=1e-3 * max(1.0, tol.scale))
            if box.contains(p, eps):
                raw.append((p, frozenset((ci.id, cj.id))))
    return raw


def _cluster(raw: list[tuple[Point2, frozenset[int]]], eps: float):
    if not raw:
        return []
    P = np.array([p for p, _ in raw])
    parent = list(range(len(raw)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in sorted(cKDTree(P).query_pairs(eps)):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(len(raw)):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        c = P[members].mean(axis=0)
        curves = frozenset().union(*(raw[m][1] for m in members))
        out.append(((float(c[0]), float(c[1])), curves))
    return out


class _GraphBuilder:
    def __init__(self, curves: Sequence[ScenicCurve], box: Box, tol: Tolerance):
        self.curves = curves
        self.box = box
        self.tol = tol
        self.eps = tol.eff
        self.nodes: list[Node] = []
        self.edges: list[Edge] = []

    def add_node(self, p: Point2, kind: NodeKind, curves: Iterable[int]) -> int:
        nid = len(self.nodes)
        self.nodes.append(Node(nid, p, kind, tuple(sorted(set(curves)))))
        return nid

    def leaf(self, p: Point2, curve: int, nearby: list[int]) -> int:
        """Existing node within tolerance of ``p`` on this curve, else a new leaf."""
        for nid in nearby:
            if math.dist(self.nodes[nid].coords, p) <= self.eps:
                return nid
        for nid in range(self.first_leaf, len(self.nodes)):
            n = self.nodes[nid]
            if math.dist(n.coords, p) <= self.eps:
                if curve not in n.curves:
                    self.nodes[nid] = Node(nid, n.coords, n.kind, tuple(sorted(n.curves + (curve,))))
                return nid
        return self.add_node(p, NodeKind.BOUNDARY_LEAF, [curve])

    def add_edge(self, u: int, v: int, curve: ScenicCurve, geom, length: float):
        if length <= 0:
            return
        self.edges.append(Edge(len(self.edges), u, v, curve.id, geom, length, curve.pairs))

    def build(self) -> list[Node]:
        raw = curve_intersections(self.curves, self.box, self.tol)
        clusters = _cluster(raw, self.eps)
        P = np.array([c for c, _ in clusters]).reshape(-1, 2)
        extra = [set(cs) for _, cs in clusters]
        for curve in self.curves:
            for k in np.flatnonzero(_on_curve_mask(curve.geometry, P, self.eps)):
                extra[k].add(curve.id)
        for p, cs in sorted(zip(map(tuple, P.tolist()), extra)):
            self.add_node(p, NodeKind.INTERSECTION, cs)
        self.first_leaf = len(self.nodes)
        on_curve: dict[int, list[int]] = {c.id: [] for c in self.curves}
        for n in self.nodes:
            for cid in n.curves:
                on_curve[cid].append(n.id)
        for curve in self.curves:
            if curve.is_line:
                self._line_edges(curve, on_curve[curve.id])
            else:
                self._circle_edges(curve, on_curve[curve.id])

    def _line_edges(self, curve: ScenicCurve, node_ids: list[int]):
        line: LineCurve = curve.geometry
        span = line.clip(self.box, 0.0)
        if span is None:
            return
        t0, t1 = span
        ts = sorted((line.param(self.nodes[n].coords), n) for n in node_ids)
        start = self.leaf(line.point_at(t0), curve.id, node_ids)
        end = self.leaf(line.point_at(t1), curve.id, node_ids)
        chain = [start] + [n for _, n in ts if n not in (start, end)] + [end]
        for u, v in zip(chain, chain[1:]):
            a, b = self.nodes[u].coords, self.nodes[v].coords
            self.add_edge(u, v, curve, Segment(a, b), math.dist(a, b))

    def _arc(self, u: int, v: int, curve: ScenicCurve, full: bool = False):
        circle: CircleCurve = curve.geometry
        a0 = circle.angle_of(self.nodes[u].coords)
        if full:
            sweep = TWO_PI
        else:
            sweep = normalize_angle(circle.angle_of(self.nodes[v].coords) - a0)
        if sweep == 0:
            return
        arc = Arc(circle, a0, sweep)
        self.add_edge(u, v, curve, arc, arc_length(arc))

    def _circle_edges(self, curve: ScenicCurve, node_ids: list[int]):
        circle: CircleCurve = curve.geometry
        crossings = self._box_crossings(circle)
        if not crossings:
            if not self.box.contains(circle.point_at(0.0), self.eps):
                return
            ordered = [n for _, n in sorted((circle.angle_of(self.nodes[n].coords), n) for n in node_ids)]
            if not ordered:
                anchor = self.add_node(circle.point_at(0.0), NodeKind.CIRCLE_ANCHOR, [curve.id])
                self._arc(anchor, anchor, curve, full=True)
            elif len(ordered) == 1:
                self._arc(ordered[0], ordered[0], curve, full=True)
            else:
                for u, v in zip(ordered, ordered[1:] + ordered[:1]):
                    self._arc(u, v, curve)
            return
        m = len(crossings)
        for i in range(m):
            lo = crossings[i]
            hi = crossings[(i + 1) % m] + (TWO_PI if i == m - 1 else 0.0)
            if not self.box.contains(circle.point_at(0.5 * (lo + hi))):
                continue
            span = hi - lo
            inner = []
            for n in node_ids:
                rel = normalize_angle(circle.angle_of(self.nodes[n].coords) - lo)
                inner.append((rel, n))
            start = self.leaf(circle.point_at(lo), curve.id, node_ids)
            end = self.leaf(circle.point_at(hi), curve.id, node_ids)
            delta = self.eps / circle.radius
            mids = [n for rel, n in sorted(inner) if delta < rel < span - delta and n not in (start, end)]
            chain = [start] + mids + [end]
            for u, v in zip(chain, chain[1:]):
                self._arc(u, v, curve, full=(u == v))

    def _box_crossings(self, circle: CircleCurve) -> list[float]:
        b, eps = self.box, self.eps
        if circle.inside_box(b, -eps):
            return []
        sides = [
            (LineCurve.through((b.xmin, 0.0), (0.0, 1.0)), 1, b.ymin, b.ymax),
            (LineCurve.through((b.xmax, 0.0), (0.0, 1.0)), 1, b.ymin, b.ymax),
            (LineCurve.through((0.0, b.ymin), (1.0, 0.0)), 0, b.xmin, b.xmax),
            (LineCurve.through((0.0, b.ymax), (1.0, 0.0)), 0, b.xmin, b.xmax),
        ]
        angles: list[float] = []
        for line, axis, lo, hi in sides:
            for p in intersect_line_circle(line, circle, self.tol):
                if lo - eps <= p[axis] <= hi + eps:
                    angles.append(circle.angle_of(p))
        angles.sort()
        delta = eps / circle.radius
        uniq: list[float] = []
        for a in angles:
            if not uniq or a - uniq[-1] > delta:
                uniq.append(a)
        if len(uniq) > 1 and uniq[0] + TWO_PI - uniq[-1] <= delta:
            uniq.pop()
        return uniq


def build_graph(curves: Sequence[ScenicCurve], cfg: Config) -> ScenicGraph:
    if not curves:
        raise ValueError("build_graph needs at least one curve")
    box = cfg.resolve_box()
    tol = cfg.tolerance()
    builder = _GraphBuilder(curves, box, tol)
    builder.build()
    g = ScenicGraph(builder.nodes, builder.edges, box, list(curves), list(cfg.points),
                    cfg.all_pairs(), tol)
    if not g.intersection_nodes():
        g.flags.append("disconnected coverage")
    return g


def build_scenic_graph(cfg: Config) -> ScenicGraph:
    return build_graph(build_curves(cfg), cfg)


def pair_coverage(g: ScenicGraph, edge_ids: Iterable[int]) -> set[PairId]:
    covered: set[PairId] = set()
    for e in edge_ids:
        covered.update(g.edges[e].pairs)
    return covered


def completeness(g: ScenicGraph, covered: Iterable[PairId]) -> float:
    if not g.all_pairs:
        return 0.0
    return len(set(covered) & set(g.all_pairs)) / len(g.all_pairs)


def edge_points(edge: Edge, n: int = 32) -> list[Point2]:
    """``n`` points spread uniformly along the edge, endpoints included."""
    fracs = [i / (n - 1) for i in range(n)] if n > 1 else [0.5]
    geom = edge.geometry
    if isinstance(geom, Arc):
        return [geom.point_at(f) for f in fracs]
    (ax, ay), (bx, by) = geom.start, geom.end
    return [(ax + f * (bx - ax), ay + f * (by - ay)) for f in fracs]
