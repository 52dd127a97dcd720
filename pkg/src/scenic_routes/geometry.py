"""2D primitives used by the scenic graph: lines, circles, arcs, hulls.

All comparisons go through a :class:`Tolerance`, whose effective value is
``eps_abs * max(1, scale)`` with ``scale`` the diagonal of the working box.
Points are plain ``(x, y)`` float tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Point2 = tuple[float, float]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tolerance:
    eps_abs: float = 1e-9
    scale: float = 1.0

    def __post_init__(self):
        if not self.eps_abs > 0:
            raise ValueError("eps_abs must be positive")

    @property
    def eff(self) -> float:
        return self.eps_abs * max(1.0, self.scale)

    def with_scale(self, scale: float) -> "Tolerance":
        return Tolerance(self.eps_abs, scale)


DEFAULT_TOL = Tolerance()


def check_point(p: Sequence[float]) -> Point2:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite coordinate {p!r}")
    return (x, y)


def normalize_angle(theta: float) -> float:
    theta = math.fmod(theta, TWO_PI)
    if theta < 0:
        theta += TWO_PI
    # fmod can hand back exactly 2*pi after the correction above
    if theta >= TWO_PI:
        theta = 0.0
    return theta


@dataclass(frozen=True)
class Box:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self):
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError(f"degenerate box {self!r}")

    @property
    def diagonal(self) -> float:
        return math.hypot(self.xmax - self.xmin, self.ymax - self.ymin)

    @property
    def center(self) -> Point2:
        return (0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax))

    def contains(self, p: Point2, tol: float = 0.0) -> bool:
        return (self.xmin - tol <= p[0] <= self.xmax + tol
                and self.ymin - tol <= p[1] <= self.ymax + tol)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.xmin, self.ymin, self.xmax, self.ymax)

    @classmethod
    def around(cls, pts: Iterable[Point2], expand: float = 1.5) -> "Box":
        """Bounding box of ``pts`` with each half-extent scaled by ``expand``.

        A degenerate extent (all points on a vertical or horizontal line, or
        a single point) borrows the larger extent, or 1 if both are zero.
        """
        if expand < 1:
            raise ValueError("expand factor must be >= 1")
        arr = np.asarray(list(pts), dtype=float)
        lo, hi = arr.min(axis=0), arr.max(axis=0)
        center = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        fallback = half.max() if half.max() > 0 else 1.0
        half = np.where(half > 0, half, fallback) * expand
        return cls(float(center[0] - half[0]), float(center[1] - half[1]),
                   float(center[0] + half[0]), float(center[1] + half[1]))


@dataclass(frozen=True)
class LineCurve:
    """Infinite line ``anchor + t * direction``.

    Always build through :meth:`through` so the representation is canonical:
    unit direction with its first nonzero component positive, and the anchor
    at the foot of the perpendicular from the origin.
    """

    anchor: Point2
    direction: Point2

    @classmethod
    def through(cls, p: Sequence[float], direction: Sequence[float]) -> "LineCurve":
        dx, dy = float(direction[0]), float(direction[1])
        n = math.hypot(dx, dy)
        if n == 0 or not math.isfinite(n):
            raise ValueError("line direction must be nonzero and finite")
        dx, dy = dx / n, dy / n
        if dx < 0 or (dx == 0 and dy < 0):
            dx, dy = -dx, -dy
        px, py = check_point(p)
        t = px * dx + py * dy
        return cls((px - t * dx, py - t * dy), (dx, dy))

    @property
    def normal(self) -> Point2:
        return (-self.direction[1], self.direction[0])

    @property
    def offset(self) -> float:
        nx, ny = self.normal
        return nx * self.anchor[0] + ny * self.anchor[1]

    def param(self, p: Point2) -> float:
        return ((p[0] - self.anchor[0]) * self.direction[0]
                + (p[1] - self.anchor[1]) * self.direction[1])

    def point_at(self, t: float) -> Point2:
        return (self.anchor[0] + t * self.direction[0],
                self.anchor[1] + t * self.direction[1])

    def distance(self, p: Point2) -> float:
        nx, ny = self.normal
        return abs(nx * (p[0] - self.anchor[0]) + ny * (p[1] - self.anchor[1]))

    def clip(self, box: Box, tol: float = 0.0) -> tuple[float, float] | None:
        """Parameter interval of the part of the line inside ``box`` (Liang-Barsky)."""
        t0, t1 = -math.inf, math.inf
        (ax, ay), (dx, dy) = self.anchor, self.direction
        for a, d, lo, hi in ((ax, dx, box.xmin, box.xmax), (ay, dy, box.ymin, box.ymax)):
            if abs(d) < 1e-15:
                if a < lo - tol or a > hi + tol:
                    return None
                continue
            ta, tb = (lo - a) / d, (hi - a) / d
            if ta > tb:
                ta, tb = tb, ta
            t0, t1 = max(t0, ta), min(t1, tb)
        if t1 - t0 <= tol:
            return None
        return (t0, t1)


@dataclass(frozen=True)
class CircleCurve:
    center: Point2
    radius: float

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"circle radius must be positive and finite, got {self.radius}")

    def angle_of(self, p: Point2) -> float:
        return normalize_angle(math.atan2(p[1] - self.center[1], p[0] - self.center[0]))

    def point_at(self, theta: float) -> Point2:
        return (self.center[0] + self.radius * math.cos(theta),
                self.center[1] + self.radius * math.sin(theta))

    def distance(self, p: Point2) -> float:
        return abs(math.hypot(p[0] - self.center[0], p[1] - self.center[1]) - self.radius)

    def inside_box(self, box: Box, tol: float = 0.0) -> bool:
        (cx, cy), r = self.center, self.radius
        return (cx - r >= box.xmin - tol and cx + r <= box.xmax + tol
                and cy - r >= box.ymin - tol and cy + r <= box.ymax + tol)


Curve = LineCurve | CircleCurve


@dataclass(frozen=True)
class Arc:
    """Counterclockwise arc of ``circle`` from ``start_angle`` over ``sweep`` radians."""

    circle: CircleCurve
    start_angle: float
    sweep: float

    def __post_init__(self):
        if not (0.0 <= self.start_angle < TWO_PI):
            raise ValueError(f"start angle {self.start_angle} outside [0, 2pi)")
        if not (0.0 < self.sweep <= TWO_PI):
            raise ValueError(f"sweep {self.sweep} outside (0, 2pi]")

    @property
    def end_angle(self) -> float:
        return normalize_angle(self.start_angle + self.sweep)

    @property
    def start(self) -> Point2:
        return self.circle.point_at(self.start_angle)

    @property
    def end(self) -> Point2:
        return self.circle.point_at(self.start_angle + self.sweep)

    def point_at(self, frac: float) -> Point2:
        return self.circle.point_at(self.start_angle + frac * self.sweep)

    def split(self, frac: float) -> tuple["Arc", "Arc"]:
        if not 0.0 < frac < 1.0:
            raise ValueError("split fraction must lie strictly inside (0, 1)")
        first = self.sweep * frac
        return (Arc(self.circle, self.start_angle, first),
                Arc(self.circle, normalize_angle(self.start_angle + first), self.sweep - first))


def arc_length(arc: Arc) -> float:
    return arc.circle.radius * arc.sweep


def curves_coincide(a: Curve, b: Curve, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether two curves are the same locus within tolerance."""
    eps = tol.eff
    if isinstance(a, LineCurve) and isinstance(b, LineCurve):
        # canonical form makes equal lines share direction and anchor
        return (math.dist(a.direction, b.direction) <= tol.eps_abs
                and math.dist(a.anchor, b.anchor) <= eps)
    if isinstance(a, CircleCurve) and isinstance(b, CircleCurve):
        return math.dist(a.center, b.center) <= eps and abs(a.radius - b.radius) <= eps
    return False


def intersect_lines(a: LineCurve, b: LineCurve, tol: Tolerance = DEFAULT_TOL) -> list[Point2]:
    (dax, day), (dbx, dby) = a.direction, b.direction
    cross = dax * dby - day * dbx
    if abs(cross) <= tol.eps_abs:
        return []
    # solve a.anchor + s*da = b.anchor + t*db for s
    wx, wy = b.anchor[0] - a.anchor[0], b.anchor[1] - a.anchor[1]
    s = (wx * dby - wy * dbx) / cross
    return [a.point_at(s)]


def intersect_line_circle(l: LineCurve, c: CircleCurve, tol: Tolerance = DEFAULT_TOL) -> list[Point2]:
    t_foot = l.param(c.center)
    foot = l.point_at(t_foot)
    nx, ny = l.normal
    dist = abs(nx * (c.center[0] - l.anchor[0]) + ny * (c.center[1] - l.anchor[1]))
    h2 = (c.radius - dist) * (c.radius + dist)
    eps = tol.eff
    if abs(h2) <= eps * eps:
        return [foot]
    if h2 < 0:
        return []
    h = math.sqrt(h2)
    pts = [l.point_at(t_foot - h), l.point_at(t_foot + h)]
    return sorted(pts)


def intersect_circles(a: CircleCurve, b: CircleCurve, tol: Tolerance = DEFAULT_TOL) -> list[Point2]:
    # order the pair so the result is independent of argument order
    if (a.center, a.radius) > (b.center, b.radius):
        a, b = b, a
    eps = tol.eff
    dx, dy = b.center[0] - a.center[0], b.center[1] - a.center[1]
    d = math.hypot(dx, dy)
    if d <= eps:
        return []
    along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d)
    h2 = (a.radius - along) * (a.radius + along)
    ux, uy = dx / d, dy / d
    base = (a.center[0] + along * ux, a.center[1] + along * uy)
    if abs(h2) <= eps * eps:
        return [base]
    if h2 < 0:
        return []
    h = math.sqrt(h2)
    return sorted([(base[0] - h * uy, base[1] + h * ux), (base[0] + h * uy, base[1] - h * ux)])


def intersect_curves(a: Curve, b: Curve, tol: Tolerance = DEFAULT_TOL) -> list[Point2]:
    if isinstance(a, LineCurve):
        if isinstance(b, LineCurve):
            return intersect_lines(a, b, tol)
        return intersect_line_circle(a, b, tol)
    if isinstance(b, LineCurve):
        return intersect_line_circle(b, a, tol)
    return intersect_circles(a, b, tol)


def distance_to_curve(p: Point2, curve: Curve) -> float:
    return curve.distance(p)


def _cross(o: Point2, a: Point2, b: Point2) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _collinear_eps(o: Point2, a: Point2, b: Point2) -> float:
    return 1e-12 * math.dist(o, a) * math.dist(o, b)


def convex_hull(pts: Iterable[Sequence[float]]) -> list[Point2]:
    """Gift-wrapping hull, counterclockwise from the lexicographically smallest point.

    Collinear boundary points are dropped. Coincident input collapses to a
    single vertex; collinear input yields its two extreme points.
    """
    uniq = sorted({check_point(p) for p in pts})
    if not uniq:
        raise ValueError("convex_hull needs at least one point")
    if len(uniq) == 1:
        return [uniq[0]]
    start = uniq[0]
    hull = [start]
    current = start
    for _ in range(len(uniq) + 1):
        cand = uniq[1] if current == uniq[0] else uniq[0]
        for r in uniq:
            if r == current or r == cand:
                continue
            cr = _cross(current, cand, r)
            if abs(cr) <= _collinear_eps(current, cand, r):
                if math.dist(current, r) > math.dist(current, cand):
                    cand = r
            elif cr < 0:
                cand = r
        if cand == start:
            break
        hull.append(cand)
        current = cand
    return hull


def alpha_shape(pts: Sequence[Sequence[float]], alpha: float) -> set[tuple[int, int]]:
    """Boundary edges ``(i, j)`` (``i < j``) of the alpha shape of ``pts``.

    An edge is on the boundary when one of the two discs of radius
    ``1/alpha`` through its endpoints holds no other input point in its
    interior.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    P = np.asarray([check_point(p) for p in pts], dtype=float)
    rho = 1.0 / alpha
    scale = float(np.ptp(P, axis=0).max()) or 1.0
    eps = 1e-12 * scale * scale
    edges = set()
    n = len(P)
    for i in range(n):
        for j in range(i + 1, n):
            p, q = P[i], P[j]
            half = 0.5 * float(np.linalg.norm(q - p))
            if half == 0 or half > rho:
                continue
            mid = 0.5 * (p + q)
            normal = np.array([p[1] - q[1], q[0] - p[0]]) / (2.0 * half)
            h = math.sqrt(max(rho * rho - half * half, 0.0))
            others = np.delete(P, [i, j], axis=0)
            if len(others) == 0:
                edges.add((i, j))
                continue
            rel = others - mid
            lhs = np.einsum("ij,ij->i", rel, rel) - half * half
            side = rel @ normal
            # interior of disc centred at mid + s*h*normal: lhs < 2*s*h*side
            for s in (1.0, -1.0):
                if not np.any(lhs < 2.0 * s * h * side - eps):
                    edges.add((i, j))
                    break
    return edges


def scenic_residual(p: Point2, r: Point2, b: Point2, w1: float, w2: float) -> float:
    """``w1*d2 - w2*d1``: zero exactly when the apparent weights of r and b agree at p."""
    return w1 * math.dist(p, b) - w2 * math.dist(p, r)
