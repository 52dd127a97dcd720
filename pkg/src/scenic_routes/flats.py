"""Bisecting hyperplanes in R^d and the lattice of their intersections.

Every red/blue pair contributes the hyperplane of points equidistant from
both sites.  Intersecting those hyperplanes repeatedly gives affine flats of
decreasing dimension; the containment relation between flats is the
traversal graph walked by :func:`densest_flat_route`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linprog, minimize

from .errors import CapExceeded, ConfigError, DegeneratePairError

PairId = tuple[int, int]

RANK_RTOL = 1e-10


@dataclass(frozen=True)
class SiteD:
    id: int
    coords: tuple[float, ...]
    color: str

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        if len(coords) < 2 or not all(math.isfinite(c) for c in coords):
            raise ConfigError(f"site {self.id} needs at least two finite coordinates")
        object.__setattr__(self, "coords", coords)


@dataclass(eq=False)
class AffineFlat:
    """``{base + basis.T @ s}``; ``base`` is the least-norm point of the flat.

    ``normals`` spans the orthogonal complement of ``basis``, so the flat is
    also ``{x : normals @ x == normals @ base}``.
    """

    base: np.ndarray
    basis: np.ndarray
    normals: np.ndarray
    generators: frozenset[PairId]
    id: int = -1
    level: int = 0
    representative: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient(self) -> int:
        return len(self.base)

    def point(self, s: Sequence[float]) -> np.ndarray:
        return self.base + np.asarray(s, dtype=float) @ self.basis if self.dim else self.base.copy()

    def projector(self) -> np.ndarray:
        return self.basis.T @ self.basis

    def contains(self, x: np.ndarray, tol: float) -> bool:
        return bool(np.all(np.abs(self.normals @ (x - self.base)) <= tol))


def bisecting_hyperplane(r: Sequence[float], b: Sequence[float],
                         generators: frozenset[PairId] = frozenset()) -> AffineFlat:
    r, b = np.asarray(r, dtype=float), np.asarray(b, dtype=float)
    if r.shape != b.shape:
        raise ValueError("sites live in different dimensions")
    diff = b - r
    norm = float(np.linalg.norm(diff))
    if norm == 0:
        raise DegeneratePairError("degenerate pair: coincident sites have no bisector")
    n = diff / norm
    offset = float(n @ (0.5 * (r + b)))
    _, _, vt = np.linalg.svd(n[None, :])
    return AffineFlat(offset * n, vt[1:], n[None, :], frozenset(generators))


def intersect_flats(f: AffineFlat, h: AffineFlat, tol: float = 1e-9) -> AffineFlat | None:
    """Intersection of two flats, or ``None`` when they are disjoint.

    The rank of the stacked constraint system is decided with a singular
    value threshold of ``1e-10 * sigma_max``.
    """
    if f.ambient != h.ambient:
        raise ValueError("flats live in different ambient dimensions")
    A = np.vstack([f.normals, h.normals])
    c = np.concatenate([f.normals @ f.base, h.normals @ h.base])
    u, s, vt = np.linalg.svd(A)
    rank = int(np.sum(s > RANK_RTOL * s[0]))
    x0 = vt[:rank].T @ ((u[:, :rank].T @ c) / s[:rank])
    if np.max(np.abs(A @ x0 - c)) > tol:
        return None
    gens = f.generators | h.generators
    if rank == len(f.normals):
        return AffineFlat(f.base, f.basis, f.normals, gens, f.id, f.level, f.representative)
    return AffineFlat(x0, vt[rank:], vt[:rank], gens)


def box_around(coords: np.ndarray, expand: float = 1.5) -> tuple[np.ndarray, np.ndarray]:
    lo, hi = coords.min(axis=0), coords.max(axis=0)
    center, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    fallback = half.max() if half.max() > 0 else 1.0
    half = np.where(half > 0, half, fallback) * expand
    return center - half, center + half


def in_box_point(flat: AffineFlat, lo: np.ndarray, hi: np.ndarray, tol: float) -> np.ndarray | None:
    """Least-norm point of ``flat`` inside the box, or ``None`` if the flat misses it."""
    if np.all(flat.base >= lo - tol) and np.all(flat.base <= hi + tol):
        return flat.base.copy()
    if flat.dim == 0:
        return None
    B = flat.basis
    # lo - tol <= base + B.T s <= hi + tol
    A_ub = np.vstack([B.T, -B.T])
    b_ub = np.concatenate([hi + tol - flat.base, flat.base - lo + tol])
    lp = linprog(np.zeros(flat.dim), A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * flat.dim,
                 method="highs")
    if lp.status != 0:
        return None
    # base is orthogonal to the directions, so |x|^2 = |base|^2 + |s|^2
    res = minimize(lambda s: s @ s, lp.x, jac=lambda s: 2 * s, method="SLSQP",
                   constraints=[{"type": "ineq", "fun": lambda s: b_ub - A_ub @ s,
                                 "jac": lambda s: -A_ub}])
    s = res.x if res.success and np.all(A_ub @ res.x <= b_ub + tol) else lp.x
    return flat.point(s)


@dataclass
class LatticeConfig:
    box: tuple[Sequence[float], Sequence[float]] | None = None
    expand: float = 1.5
    depth_limit: int | None = None
    max_flats: int = 10000
    eps_abs: float = 1e-9


@dataclass
class FlatLattice:
    flats: list[AffineFlat]
    edges: list[tuple[int, int]]
    box: tuple[np.ndarray, np.ndarray]
    dim: int
    pairs: list[PairId]
    incidence: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.incidence:
            self.incidence = [len(n) for n in self.neighbors()]

    def neighbors(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.flats]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def level(self, k: int) -> list[AffineFlat]:
        return [f for f in self.flats if f.level == k]


class _FlatIndex:
    """Finds an existing flat equal to a candidate (same dimension, base and span)."""

    def __init__(self, tol: float):
        self.tol = tol
        self.by_dim: dict[int, list[AffineFlat]] = {}
        self.bases: dict[int, np.ndarray] = {}

    def find(self, f: AffineFlat) -> AffineFlat | None:
        flats = self.by_dim.get(f.dim)
        if not flats:
            return None
        d = np.max(np.abs(self.bases[f.dim][: len(flats)] - f.base), axis=1)
        P = f.projector()
        for k in np.flatnonzero(d <= self.tol):
            g = flats[k]
            if np.max(np.abs(g.projector() - P)) <= 1e-8:
                return g
        return None

    def add(self, f: AffineFlat):
        flats = self.by_dim.setdefault(f.dim, [])
        arr = self.bases.get(f.dim)
        if arr is None or len(arr) == len(flats):
            grown = np.empty((max(16, 2 * len(flats)), f.ambient))
            if arr is not None:
                grown[: len(flats)] = arr
            self.bases[f.dim] = arr = grown
        arr[len(flats)] = f.base
        flats.append(f)


def build_lattice(sites: Sequence[SiteD], cfg: LatticeConfig | None = None) -> FlatLattice:
    cfg = cfg or LatticeConfig()
    reds = [s for s in sites if s.color == "red"]
    blues = [s for s in sites if s.color == "blue"]
    if not reds or not blues:
        raise ConfigError("the flat lattice needs at least one red and one blue site", "/points")
    dims = {len(s.coords) for s in sites}
    if len(dims) != 1:
        raise ConfigError("all sites must have the same number of coordinates", "/points")
    d = dims.pop()
    coords = np.array([s.coords for s in sites])
    if cfg.box is not None:
        lo, hi = (np.asarray(v, dtype=float) for v in cfg.box)
        if lo.shape != (d,) or hi.shape != (d,) or np.any(hi <= lo):
            raise ConfigError("box bounds must match the site dimension and be non-degenerate", "/box")
    else:
        lo, hi = box_around(coords, cfg.expand)
    tol = cfg.eps_abs * max(1.0, float(np.linalg.norm(hi - lo)))
    depth = d if cfg.depth_limit is None else cfg.depth_limit
    index = _FlatIndex(tol)
    flats: list[AffineFlat] = []
    edges: set[tuple[int, int]] = set()

    def register(f: AffineFlat, level: int) -> tuple[AffineFlat, bool]:
        same = index.find(f)
        if same is not None:
            same.generators = same.generators | f.generators
            return same, False
        rep = in_box_point(f, lo, hi, tol)
        if rep is None:
            return f, False
        if len(flats) >= cfg.max_flats:
            raise CapExceeded(
                f"more than max_flats={cfg.max_flats} flats; the lattice grows combinatorially "
                "with the number of pairs and the dimension, lower --depth-limit or use fewer sites")
        f.id, f.level, f.representative = len(flats), level, rep
        flats.append(f)
        index.add(f)
        return f, True

    pairs = [(r.id, b.id) for r in reds for b in blues]
    hyperplanes: list[AffineFlat] = []
    for r in reds:
        for b in blues:
            h, new = register(bisecting_hyperplane(r.coords, b.coords, frozenset({(r.id, b.id)})), 0)
            if new:
                hyperplanes.append(h)
    frontier = list(hyperplanes)
    for level in range(1, depth):
        nxt: list[AffineFlat] = []
        for f in frontier:
            if f.dim == 0:
                continue
            for h in hyperplanes:
                if h is f or h.generators <= f.generators:
                    continue
                g = intersect_flats(f, h, tol)
                if g is None:
                    continue
                if g.dim == f.dim:
                    # f already lies inside h
                    f.generators = g.generators
                    edges.add((h.id, f.id))
                    continue
                g, new = register(g, level)
                if g.id < 0:
                    continue
                edges.update({(f.id, g.id), (h.id, g.id)})
                if new:
                    nxt.append(g)
        frontier = nxt
        if not frontier:
            break
    return FlatLattice(flats, sorted(edges), (lo, hi), d, pairs)


@dataclass(frozen=True)
class FlatHop:
    src: int
    dst: int
    kind: str  # "adjacent", "jump" (same component) or "connector" (across components)
    length: float


@dataclass
class FlatRoute:
    parts: list[list[int]]
    hops: list[FlatHop]

    @property
    def sequence(self) -> list[int | None]:
        """Flat ids in visiting order, ``None`` marking a non-scenic connection."""
        out: list[int | None] = []
        for i, part in enumerate(self.parts):
            if i:
                out.append(None)
            out.extend(part)
        return out


def lattice_components(lat: FlatLattice) -> list[list[int]]:
    adj = lat.neighbors()
    seen: set[int] = set()
    comps = []
    for start in range(len(lat.flats)):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def densest_flat_route(lat: FlatLattice) -> FlatRoute:
    """Greedy walk from the most-connected flat toward less-connected ones."""
    if not lat.flats:
        raise ValueError("lattice is empty")
    adj = lat.neighbors()
    inc = lat.incidence

    def rank(i: int):
        return (-inc[i], i)

    def gap(a: int, b: int) -> float:
        return float(np.linalg.norm(lat.flats[a].representative - lat.flats[b].representative))

    comps = sorted(lattice_components(lat), key=lambda c: min(rank(i) for i in c))
    parts: list[list[int]] = []
    hops: list[FlatHop] = []
    visited: set[int] = set()
    for comp in comps:
        cur = min(comp, key=rank)
        if parts:
            hops.append(FlatHop(parts[-1][-1], cur, "connector", gap(parts[-1][-1], cur)))
        part = [cur]
        visited.add(cur)
        while True:
            near = [j for j in adj[cur] if j not in visited]
            kind = "adjacent"
            if not near:
                near = [j for j in comp if j not in visited]
                kind = "jump"
            if not near:
                break
            nxt = min(near, key=rank)
            hops.append(FlatHop(cur, nxt, kind, gap(cur, nxt)))
            visited.add(nxt)
            part.append(nxt)
            cur = nxt
        parts.append(part)
    return FlatRoute(parts, hops)
