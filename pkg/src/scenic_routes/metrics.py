"""Route quality metrics and the requirement-ordered comparator."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from enum import Enum

from .errors import RoutingError
from .routes import Route
from .scenic_graph import ScenicGraph, completeness, pair_coverage


@dataclass(frozen=True)
class RouteMetrics:
    completeness: float = 0.0
    scenic_length: float = 0.0
    nonscenic_length: float = 0.0
    repeated_length: float = 0.0
    edge_count: int = 0
    direction_changes: int = 0

    @property
    def total_length(self) -> float:
        return self.scenic_length + self.nonscenic_length

    def to_dict(self) -> dict:
        return asdict(self)


class Requirement(str, Enum):
    ONLY_SCENIC = "only_scenic"
    COMPLETENESS = "completeness"
    ROUTE_LENGTH = "route_length"
    REPEATED_EDGES = "repeated_edges"
    EDGE_COUNT = "edge_count"


R = Requirement

# 2D requirement list: only-scenic, completeness, few edges, few repeats; length last
SEC2_ORDER = (R.ONLY_SCENIC, R.COMPLETENESS, R.EDGE_COUNT, R.REPEATED_EDGES, R.ROUTE_LENGTH)
# weighted-points list: completeness first, then only-scenic, length, repeats, edges
SEC3_ORDER = (R.COMPLETENESS, R.ONLY_SCENIC, R.ROUTE_LENGTH, R.REPEATED_EDGES, R.EDGE_COUNT)

ORDER_PRESETS = {"sec2": SEC2_ORDER, "sec3": SEC3_ORDER}


def requirement_order(spec) -> tuple[Requirement, ...]:
    """Accept a preset name or a sequence of requirement names."""
    if isinstance(spec, str):
        try:
            return ORDER_PRESETS[spec]
        except KeyError:
            raise ValueError(f"unknown order preset {spec!r}; choose from {sorted(ORDER_PRESETS)}")
    order = tuple(Requirement(r) for r in spec)
    if sorted(order) != sorted(Requirement):
        raise ValueError("requirement order must be a permutation of all five requirements")
    return order


def route_metrics(g: ScenicGraph, route: Route) -> RouteMetrics:
    if not route.steps:
        return RouteMetrics()
    counts: Counter[int] = Counter()
    scenic, nonscenic = [], []
    curves = []
    for s in route.steps:
        if s.scenic:
            if not 0 <= s.edge < len(g.edges):
                raise RoutingError(f"route references unknown edge {s.edge}")
            e = g.edges[s.edge]
            counts[e.id] += 1
            scenic.append(e.length)
            curves.append(e.curve)
        else:
            nonscenic.append(s.length)
    repeated = math.fsum((c - 1) * g.edges[e].length for e, c in counts.items() if c > 1)
    changes = sum(1 for a, b in zip(curves, curves[1:]) if a != b)
    return RouteMetrics(
        completeness=completeness(g, pair_coverage(g, counts)),
        scenic_length=math.fsum(scenic),
        nonscenic_length=math.fsum(nonscenic),
        repeated_length=repeated,
        edge_count=len(scenic),
        direction_changes=changes,
    )


def _value(m: RouteMetrics, req: Requirement) -> float:
    if req is R.ONLY_SCENIC:
        return m.nonscenic_length
    if req is R.COMPLETENESS:
        return -m.completeness
    if req is R.ROUTE_LENGTH:
        return m.total_length
    if req is R.REPEATED_EDGES:
        return m.repeated_length
    return m.edge_count


def sort_key(m: RouteMetrics, order=SEC3_ORDER) -> tuple:
    """Key under which smaller means preferred."""
    return tuple(_value(m, r) for r in requirement_order(order))


def compare_routes(a: RouteMetrics, b: RouteMetrics, order=SEC3_ORDER) -> int:
    """-1 if ``a`` is preferred, 1 if ``b`` is, 0 if they tie on every requirement."""
    ka, kb = sort_key(a, order), sort_key(b, order)
    return (ka > kb) - (ka < kb)
