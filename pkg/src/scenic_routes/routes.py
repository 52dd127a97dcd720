"""Route generation on a scenic graph.

Five strategies are provided: :func:`route_minmax_hull`,
:func:`route_densest_line`, :func:`route_acu`, :func:`route_acch` and
:func:`route_dpe`.  Each returns a :class:`Route`, a walk made of scenic
steps (graph edges) and non-scenic connectors (straight jumps between
nodes).  All tie-breaks fall back to the lowest id so output is
deterministic.
"""

from __future__ import annotations

import heapq
import math
import statistics
from dataclasses import dataclass, field
from typing import Callable

from .apsp import ApspTable, apsp, travel_table
from .errors import RoutingError
from .geometry import alpha_shape, convex_hull
from .scenic_graph import Edge, NodeKind, ScenicGraph, pair_coverage

ALGORITHMS = ("minmax-hull", "densest-line", "acu", "acch", "dpe")


@dataclass(frozen=True)
class Step:
    start: int
    end: int
    edge: int | None
    length: float

    @property
    def scenic(self) -> bool:
        return self.edge is not None


@dataclass(frozen=True)
class Leg:
    """A planned hop ``start -> end`` realised by ``steps[first:stop]``."""

    start: int
    end: int
    first: int
    stop: int
    skipped: bool = False


@dataclass
class Route:
    algorithm: str
    steps: list[Step] = field(default_factory=list)
    legs: list[Leg] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def nodes(self) -> list[int]:
        if not self.steps:
            return []
        return [self.steps[0].start] + [s.end for s in self.steps]

    @property
    def connectors(self) -> list[Step]:
        return [s for s in self.steps if not s.scenic]

    @property
    def scenic_edges(self) -> list[int]:
        return [s.edge for s in self.steps if s.scenic]

    @property
    def closed(self) -> bool:
        return bool(self.steps) and self.steps[0].start == self.steps[-1].end

    def legs_edge_disjoint(self) -> bool:
        seen: set[int] = set()
        for leg in self.legs:
            edges = {s.edge for s in self.steps[leg.first:leg.stop] if s.scenic}
            if edges & seen:
                return False
            seen |= edges
        return True


@dataclass
class RouteParams:
    distance_bound: float | None = None
    top_k: int | None = None
    alpha: float | None = None


def check_route(g: ScenicGraph, route: Route) -> None:
    """Raise ``RoutingError`` unless the route is a well-formed walk on ``g``."""
    for i, s in enumerate(route.steps):
        if not (0 <= s.start < len(g.nodes) and 0 <= s.end < len(g.nodes)):
            raise RoutingError(f"step {i} references an unknown node")
        if s.scenic:
            if not 0 <= s.edge < len(g.edges):
                raise RoutingError(f"step {i} references unknown edge {s.edge}")
            e = g.edges[s.edge]
            if {s.start, s.end} != {e.u, e.v}:
                raise RoutingError(f"step {i} does not match the endpoints of edge {e.id}")
        if i and route.steps[i - 1].end != s.start:
            raise RoutingError(f"steps {i - 1} and {i} do not share a node")


class Planner:
    """Builds walks on ``g``, crossing between components with straight connectors."""

    def __init__(self, g: ScenicGraph, table: ApspTable | None = None):
        self.g = g
        self.apsp = table if table is not None else apsp(g)
        self.travel = travel_table(g, self.apsp)
        self._best: dict[tuple[int, int], Edge] = {}
        for e in g.edges:
            key = (min(e.u, e.v), max(e.u, e.v))
            cur = self._best.get(key)
            if cur is None or (e.length, e.id) < (cur.length, cur.id):
                self._best[key] = e

    def scenic_dist(self, a: int, b: int) -> float:
        return float(self.apsp.dist[a, b])

    def travel_dist(self, a: int, b: int) -> float:
        return float(self.travel.table.dist[a, b])

    def hop(self, a: int, b: int) -> Step:
        e = self._best.get((min(a, b), max(a, b)))
        if e is not None and not e.is_loop and e.length == self.travel.table.weight[a, b]:
            return Step(a, b, e.id, e.length)
        return self.connector(a, b)

    def connector(self, a: int, b: int) -> Step:
        return Step(a, b, None, math.dist(self.g.nodes[a].coords, self.g.nodes[b].coords))

    def walk(self, a: int, b: int) -> list[Step]:
        nodes = self.travel.table.path(a, b)
        if not nodes:
            return [self.connector(a, b)]
        return [self.hop(x, y) for x, y in zip(nodes, nodes[1:])]

    def scenic_walk(self, a: int, b: int) -> list[Step] | None:
        nodes = self.apsp.path(a, b)
        if not nodes:
            return None
        return [self.hop(x, y) for x, y in zip(nodes, nodes[1:])]

    def traverse(self, e: Edge, start: int) -> Step:
        return Step(start, e.other(start), e.id, e.length)


class _Builder:
    def __init__(self, name: str):
        self.route = Route(name)

    @property
    def steps(self) -> list[Step]:
        return self.route.steps

    def extend(self, steps: list[Step]):
        self.route.steps.extend(steps)

    def leg(self, a: int, b: int, steps: list[Step], skipped: bool = False):
        first = len(self.route.steps)
        self.extend(steps)
        self.route.legs.append(Leg(a, b, first, len(self.route.steps), skipped))


def _nodes_for_points(g: ScenicGraph, ids: list[int], hull) -> list[int]:
    by_coords: dict[tuple[float, float], int] = {}
    for nid in sorted(ids):
        by_coords.setdefault(g.nodes[nid].coords, nid)
    return [by_coords[p] for p in hull]


def route_minmax_hull(g: ScenicGraph, planner: Planner | None = None,
                      params: RouteParams | None = None, centroid=None) -> Route:
    """Closed walk around the convex hull of the intersection nodes near the sites."""
    planner = planner or Planner(g)
    params = params or RouteParams()
    b = _Builder("minmax-hull")
    if not g.edges:
        b.route.flags.append("empty")
        return b.route
    if centroid is None:
        xs = [p.coords[0] for p in g.points]
        ys = [p.coords[1] for p in g.points]
        centroid = (sum(xs) / len(xs), sum(ys) / len(ys))
    bound = params.distance_bound if params.distance_bound is not None else 0.5 * g.box.diagonal
    cands = [n.id for n in g.intersection_nodes() if math.dist(n.coords, centroid) <= bound]
    if len(cands) < 3:
        e = max(g.edges, key=lambda e: (e.length, -e.id))
        out = planner.traverse(e, e.u)
        b.leg(e.u, e.v, [out])
        b.leg(e.v, e.u, [Step(out.end, out.start, e.id, e.length)])
        b.route.flags.append("degenerate")
        return b.route
    hull = _nodes_for_points(g, cands, convex_hull([g.nodes[i].coords for i in cands]))
    if len(hull) < 3:
        b.route.flags.append("degenerate")
        hull = [hull[0], hull[-1]]
    for x, y in zip(hull, hull[1:] + hull[:1]):
        b.leg(x, y, planner.walk(x, y))
    return b.route


def _line_density(g: ScenicGraph, cid: int) -> tuple[int, float]:
    edges = g.curve_edges(cid)
    inter = {n for e in edges for n in (e.u, e.v) if g.nodes[n].kind is NodeKind.INTERSECTION}
    return len(inter), sum(e.length for e in edges)


def _dijkstra(adj: dict[int, list[tuple[int, float]]], src: int) -> tuple[dict, dict]:
    dist, prev = {src: 0.0}, {}
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in sorted(adj.get(u, [])):
            nd = d + w
            if nd < dist.get(v, math.inf):
                dist[v], prev[v] = nd, u
                heapq.heappush(heap, (nd, v))
    return dist, prev


def default_alpha(coords: list[tuple[float, float]]) -> float | None:
    dists = [math.dist(a, b) for i, a in enumerate(coords) for b in coords[i + 1:]]
    med = statistics.median(dists) if dists else 0.0
    return 2.0 / med if med > 0 else None


def route_densest_line(g: ScenicGraph, planner: Planner | None = None,
                       params: RouteParams | None = None) -> Route:
    """Traverse the densest bisector lines end to end, hopping along an alpha-shape boundary."""
    planner = planner or Planner(g)
    params = params or RouteParams()
    lines = [c for c in g.curves if c.is_line]
    if not lines:
        raise RoutingError("no line curves (all pairs are weighted circles); "
                           "use the acu, acch or dpe algorithm instead")
    lines = [c for c in lines if g.curve_edges(c.id)]
    b = _Builder("densest-line")
    if not lines:
        b.route.flags.append("empty")
        return b.route
    ranked = sorted(lines, key=lambda c: (tuple(-x for x in _line_density(g, c.id)), c.id))
    k = params.top_k if params.top_k is not None else max(2, math.ceil(len(g.curves) / 4))
    target = set(g.all_pairs)
    selected, covered = [], set()
    for c in ranked[:k]:
        selected.append(c)
        covered.update(c.pairs)
        if covered >= target:
            break

    chains = {}
    for c in selected:
        edges = g.curve_edges(c.id)
        chains[c.id] = edges
    ends = sorted({n for es in chains.values() for n in (es[0].u, es[-1].v)})
    coords = [g.nodes[n].coords for n in ends]
    adj: dict[int, list[tuple[int, float]]] = {}
    if len(ends) >= 2:
        alpha = params.alpha if params.alpha is not None else default_alpha(coords)
        if alpha is None:
            bedges = set()
        else:
            bedges = alpha_shape(coords, alpha)
        for i, j in bedges:
            u, v = ends[i], ends[j]
            w = math.dist(coords[i], coords[j])
            adj.setdefault(u, []).append((v, w))
            adj.setdefault(v, []).append((u, w))

    def run_line(cid: int, start: int) -> int:
        edges = chains[cid]
        if start == edges[0].u:
            steps = [planner.traverse(e, e.u) for e in edges]
        else:
            steps = [planner.traverse(e, e.v) for e in reversed(edges)]
        b.leg(steps[0].start, steps[-1].end, steps)
        return steps[-1].end

    pos = run_line(selected[0].id, chains[selected[0].id][0].u)
    remaining = [c.id for c in selected[1:]]
    while remaining:
        dist, prev = _dijkstra(adj, pos)
        best = None
        for order, cid in enumerate(remaining):
            for end in (chains[cid][0].u, chains[cid][-1].v):
                key = (dist.get(end, math.inf), order, end)
                if best is None or key < best[0]:
                    best = (key, cid, end)
        (d, _, end), cid, _ = best
        if math.isfinite(d):
            path = [end]
            while path[-1] != pos:
                path.append(prev[path[-1]])
            path.reverse()
            for x, y in zip(path, path[1:]):
                scenic = planner.scenic_walk(x, y)
                b.leg(x, y, scenic if scenic is not None else [planner.connector(x, y)])
        else:
            # nearest remaining endpoint by travel distance
            cands = [(planner.travel_dist(pos, e), order, e, c)
                     for order, c in enumerate(remaining)
                     for e in (chains[c][0].u, chains[c][-1].v)]
            _, _, end, cid = min(cands)
            b.leg(pos, end, planner.walk(pos, end))
        remaining.remove(cid)
        pos = run_line(cid, end)
    b.route.flags.append(f"lines={','.join(str(c.id) for c in selected)}")
    return b.route


def acu_chosen_edges(g: ScenicGraph) -> dict[int, Edge]:
    """Shortest edge of every curve (ties: lowest edge id)."""
    chosen: dict[int, Edge] = {}
    for e in g.edges:
        cur = chosen.get(e.curve)
        if cur is None or (e.length, e.id) < (cur.length, cur.id):
            chosen[e.curve] = e
    return dict(sorted(chosen.items()))


def route_acu(g: ScenicGraph, planner: Planner | None = None) -> Route:
    """Chain the shortest edge of every curve by nearest-neighbour travel."""
    planner = planner or Planner(g)
    b = _Builder("acu")
    chosen = acu_chosen_edges(g)
    if not chosen:
        b.route.flags.append("empty")
        return b.route
    first = min(chosen.values(), key=lambda e: (min(g.nodes[e.u].coords, g.nodes[e.v].coords), e.id))
    start = min((first.u, first.v), key=lambda n: (g.nodes[n].coords, n))
    remaining = {e.id for e in chosen.values()} - {first.id}
    b.leg(start, first.other(start), [planner.traverse(first, start)])
    pos = b.steps[-1].end
    while remaining:
        d, node, eid = min((planner.travel_dist(pos, n), n, eid)
                           for eid in remaining for n in (g.edges[eid].u, g.edges[eid].v))
        if node != pos:
            steps = planner.walk(pos, node)
            b.leg(pos, node, steps)
            remaining -= {s.edge for s in steps}
        if eid in remaining:
            e = g.edges[eid]
            b.leg(node, e.other(node), [planner.traverse(e, node)])
            remaining.discard(eid)
            pos = e.other(node)
        else:
            pos = node
    return b.route


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def connected(self, a: int, b: int) -> bool:
        return a in self.parent and b in self.parent and self.find(a) == self.find(b)


def route_acch(g: ScenicGraph, planner: Planner | None = None) -> Route:
    """Closed walk over the convex hull of the ACU edge endpoints.

    A hull hop is skipped when the route built so far already joins its two
    ends; the closing hop back to the first hull vertex is always made.
    """
    planner = planner or Planner(g)
    chosen = acu_chosen_edges(g)
    S = sorted({n for e in chosen.values() for n in (e.u, e.v)})
    if len(S) < 3 or len(hull := convex_hull([g.nodes[n].coords for n in S])) < 3:
        route = route_acu(g, planner)
        route.algorithm = "acch"
        route.flags.append("fallback")
        return route
    hull_nodes = _nodes_for_points(g, S, hull)
    b = _Builder("acch")
    uf = _UnionFind()
    pos = hull_nodes[0]
    for target in hull_nodes[1:]:
        if uf.connected(pos, target):
            b.leg(pos, target, [], skipped=True)
            continue
        steps = planner.walk(pos, target)
        for s in steps:
            uf.union(s.start, s.end)
        b.leg(pos, target, steps)
        pos = target
    if pos != hull_nodes[0]:
        b.leg(pos, hull_nodes[0], planner.walk(pos, hull_nodes[0]))
    return b.route


def route_dpe(g: ScenicGraph, planner: Planner | None = None) -> Route:
    """Greedy expansion from the highest-degree node toward uncovered pairs."""
    planner = planner or Planner(g)
    b = _Builder("dpe")
    if not g.edges:
        b.route.flags.append("empty")
        return b.route
    coverable = pair_coverage(g, range(len(g.edges)))
    covered: set = set()
    degree = [g.degree(n.id) for n in g.nodes]
    pos = min(range(len(g.nodes)), key=lambda n: (-degree[n], n))

    def gain(e: Edge) -> int:
        return len(set(e.pairs) - covered)

    while not covered >= coverable:
        cands = [g.edges[i] for i in g.incident(pos) if gain(g.edges[i]) > 0]
        if cands:
            e = min(cands, key=lambda e: (-gain(e), -degree[e.other(pos)], e.length, e.id))
            step = planner.traverse(e, pos)
            b.leg(pos, step.end, [step])
            covered.update(e.pairs)
            pos = step.end
            continue
        targets = sorted({n for e in g.edges if gain(e) > 0 for n in (e.u, e.v)})
        reach = [(planner.scenic_dist(pos, t), t) for t in targets if math.isfinite(planner.scenic_dist(pos, t))]
        if reach:
            _, t = min(reach)
        else:
            _, t = min((planner.travel_dist(pos, t), t) for t in targets)
            b.route.flags.append("connector")
        steps = planner.walk(pos, t)
        b.leg(pos, t, steps)
        for s in steps:
            if s.scenic:
                covered.update(g.edges[s.edge].pairs)
        pos = t
    return b.route


def run_algorithm(name: str, g: ScenicGraph, planner: Planner | None = None,
                  params: RouteParams | None = None) -> Route:
    planner = planner or Planner(g)
    dispatch: dict[str, Callable[[], Route]] = {
        "minmax-hull": lambda: route_minmax_hull(g, planner, params),
        "densest-line": lambda: route_densest_line(g, planner, params),
        "acu": lambda: route_acu(g, planner),
        "acch": lambda: route_acch(g, planner),
        "dpe": lambda: route_dpe(g, planner),
    }
    if name not in dispatch:
        raise RoutingError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
    return dispatch[name]()
