"""Floyd-Warshall on the scenic multigraph, plus non-scenic links between components."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, csgraph_from_dense
from scipy.sparse.csgraph import floyd_warshall as csgraph_floyd_warshall

from .errors import CapExceeded
from .scenic_graph import ScenicGraph

DEFAULT_MAX_NODES = 2000


@dataclass
class ApspTable:
    """Distances and predecessor table.

    ``pred[i, j]`` is the node before ``j`` on the chosen path from ``i``
    (``-1`` when unreachable or ``i == j``).  ``dist[i, j]`` is the running
    sum of edge lengths along that path, accumulated from ``i``.
    """

    dist: np.ndarray
    pred: np.ndarray
    weight: np.ndarray

    @property
    def n(self) -> int:
        return len(self.dist)

    def reachable(self, i: int, j: int) -> bool:
        return bool(np.isfinite(self.dist[i, j]))

    def path(self, i: int, j: int) -> list[int]:
        if i == j:
            return [i]
        if not self.reachable(i, j):
            return []
        out = [j]
        while out[-1] != i:
            out.append(int(self.pred[i, out[-1]]))
        out.reverse()
        return out

    def path_length(self, nodes: list[int]) -> float:
        total = 0.0
        for a, b in zip(nodes, nodes[1:]):
            total += self.weight[a, b]
        return total


def weight_matrix(g: ScenicGraph) -> np.ndarray:
    """Adjacency weights; the shortest of parallel edges wins, self-loops are ignored."""
    n = len(g.nodes)
    W = np.full((n, n), np.inf)
    for e in g.edges:
        if e.u == e.v:
            continue
        if e.length < W[e.u, e.v]:
            W[e.u, e.v] = W[e.v, e.u] = e.length
    return W


def _accumulate(W: np.ndarray, D: np.ndarray, pred: np.ndarray) -> np.ndarray:
    """Distances summed left to right along each predecessor path.

    Targets are visited in order of their shortest distance, one rank per
    step for all sources at once; sweeps repeat until nothing changes, which
    only matters when equal distances put a predecessor after its target.
    """
    n = len(W)
    rows = np.arange(n)
    order = np.argsort(D, axis=1, kind="stable")
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for _ in range(n):
        before = dist.copy()
        for r in range(n):
            j = order[:, r]
            p = pred[rows, j]
            ok = p >= 0
            src, tgt, via = rows[ok], j[ok], p[ok]
            dist[src, tgt] = dist[src, via] + W[via, tgt]
        if np.array_equal(before, dist):
            break
    return dist


def floyd_warshall(W: np.ndarray) -> ApspTable:
    """All-pairs shortest paths of the symmetric weight matrix ``W`` (``inf`` = no edge)."""
    n = len(W)
    if n == 0:
        return ApspTable(np.zeros((0, 0)), np.zeros((0, 0), dtype=int), W)
    D, pred = csgraph_floyd_warshall(csgraph_from_dense(W, null_value=np.inf), directed=False,
                                     return_predecessors=True)
    pred = np.where(pred < 0, -1, pred).astype(np.int64)
    # re-accumulate along each path so a reconstructed path sums to exactly the stored value
    return ApspTable(_accumulate(W, D, pred), pred, W)


def apsp(g: ScenicGraph, max_nodes: int = DEFAULT_MAX_NODES) -> ApspTable:
    if len(g.nodes) > max_nodes:
        raise CapExceeded(
            f"graph has {len(g.nodes)} nodes, above the all-pairs cap of {max_nodes}; "
            "use fewer sites, a smaller box or a larger --max-nodes")
    return floyd_warshall(weight_matrix(g))


def components(g: ScenicGraph) -> list[int]:
    n = len(g.nodes)
    if n == 0:
        return []
    rows = [e.u for e in g.edges] + [e.v for e in g.edges]
    cols = [e.v for e in g.edges] + [e.u for e in g.edges]
    A = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    _, labels = connected_components(A, directed=False)
    # relabel by smallest member so labels are stable
    first: dict[int, int] = {}
    for i, lab in enumerate(labels):
        first.setdefault(int(lab), len(first))
    return [first[int(lab)] for lab in labels]


@dataclass(frozen=True)
class Link:
    """Straight non-scenic connector between two graph nodes."""

    u: int
    v: int
    length: float


def component_links(g: ScenicGraph, labels: list[int] | None = None) -> list[Link]:
    """Minimum spanning tree over components, each link joining the closest node pair."""
    labels = components(g) if labels is None else labels
    k = max(labels, default=-1) + 1
    if k <= 1:
        return []
    P = np.array([n.coords for n in g.nodes])
    members = [np.flatnonzero(np.array(labels) == c) for c in range(k)]
    cands = []
    for a in range(k):
        for b in range(a + 1, k):
            ma, mb = members[a], members[b]
            d = np.hypot(P[ma, 0][:, None] - P[mb, 0][None, :], P[ma, 1][:, None] - P[mb, 1][None, :])
            i, j = np.unravel_index(np.argmin(d), d.shape)
            u, v = int(ma[i]), int(mb[j])
            cands.append((float(d[i, j]), min(u, v), max(u, v), a, b))
    cands.sort()
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    links = []
    for d, u, v, a, b in cands:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            links.append(Link(u, v, math.dist(g.nodes[u].coords, g.nodes[v].coords)))
    return links


@dataclass
class TravelTable:
    """Shortest travel on the scenic graph augmented with component links."""

    table: ApspTable
    links: dict[tuple[int, int], Link] = field(default_factory=dict)

    def is_link(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.links


def travel_table(g: ScenicGraph, scenic: ApspTable) -> TravelTable:
    links = component_links(g)
    if not links:
        return TravelTable(scenic, {})
    W = scenic.weight.copy()
    for l in links:
        W[l.u, l.v] = W[l.v, l.u] = l.length
    return TravelTable(floyd_warshall(W), {(l.u, l.v): l for l in links})
