"""Property checks shared by the unit tests and the acceptance suite."""

import math

import numpy as np
import pytest

from scenic_routes.geometry import scenic_residual
from scenic_routes.routes import check_route
from scenic_routes.scenic_graph import edge_points


def worst_residual(g, per_edge=32):
    """Largest |w1*d2 - w2*d1| over sample points of every edge and its pairs."""
    pts = {p.id: p for p in g.points}
    worst = 0.0
    for e in g.edges:
        for q in edge_points(e, per_edge):
            for a, b in e.pairs:
                r, s = pts[a], pts[b]
                w1, w2 = r.weight, s.weight
                # weights equal within tolerance are treated as exactly equal
                if abs(w1 - w2) <= 1e-9 * max(w1, w2):
                    w1 = w2 = 1.0
                worst = max(worst, abs(scenic_residual(q, r.coords, s.coords, w1, w2)))
    return worst


def assert_well_formed(g, route):
    for i, s in enumerate(route.steps):
        if i:
            assert route.steps[i - 1].end == s.start
        if s.edge is None:
            assert s.length == pytest.approx(math.dist(g.nodes[s.start].coords, g.nodes[s.end].coords))
        else:
            e = g.edges[s.edge]
            assert {s.start, s.end} == {e.u, e.v}
            assert s.length == e.length
    for leg in route.legs:
        seg = route.steps[leg.first:leg.stop]
        if seg:
            assert seg[0].start == leg.start and seg[-1].end == leg.end
    check_route(g, route)


def flat_dimension_errors(lat, sites):
    """Flats whose dimension is not d minus the rank of their generator normals."""
    pos = {s.id: np.asarray(s.coords) for s in sites}
    bad = []
    for f in lat.flats:
        normals = np.array([pos[b] - pos[r] for r, b in sorted(f.generators)])
        k = np.linalg.matrix_rank(normals)
        if f.dim != lat.dim - k:
            bad.append(f.id)
    return bad


def flat_residual(lat, sites, rng, samples=8):
    """Largest | |x-r|^2 - |x-b|^2 | over generator pairs and points of each flat."""
    pos = {s.id: np.asarray(s.coords) for s in sites}
    worst = 0.0
    for f in lat.flats:
        xs = [f.representative, f.base]
        for _ in range(samples if f.dim else 0):
            xs.append(f.point(rng.normal(size=f.dim) * 3.0))
        for x in xs:
            for r, b in f.generators:
                worst = max(worst, abs(np.sum((x - pos[r]) ** 2) - np.sum((x - pos[b]) ** 2)))
    return worst


def lattice_matches_graph(lat, g, tol=1e-7):
    """Lines correspond to curves and points to intersection nodes, with matching incidences."""
    lines = {frozenset(f.generators): f for f in lat.level(0)}
    curves = {frozenset(c.pairs): c for c in g.curves if g.curve_edges(c.id)}
    if set(lines) != set(curves):
        return False
    curve_flat = {c.id: lines[key].id for key, c in curves.items()}
    points = [f for f in lat.flats if f.dim == 0]
    nodes = g.intersection_nodes()
    if len(points) != len(nodes):
        return False
    adj = lat.neighbors()
    for n in nodes:
        match = [f for f in points if np.max(np.abs(f.base - np.asarray(n.coords))) <= tol]
        if len(match) != 1:
            return False
        on = {curve_flat[c] for c in n.curves if c in curve_flat}
        if {j for j in adj[match[0].id] if lat.flats[j].dim == 1} != on:
            return False
    return True


ACCEPTANCE_LINES: list[str] = []


class criterion:
    """Context manager recording a PASS/FAIL line for an acceptance criterion."""

    def __init__(self, number, title):
        self.number, self.title = number, title
        self.details: list[str] = []

    def note(self, text):
        self.details.append(text)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        extra = f" ({'; '.join(self.details)})" if self.details else ""
        line = f"[{status}] criterion {self.number}: {self.title}{extra}"
        if exc_type is not None:
            line += f" -> {exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return False
