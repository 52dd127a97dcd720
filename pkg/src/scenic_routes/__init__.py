"""Scenic graphs and scenic routes for red/blue (optionally weighted) points."""

from .apsp import ApspTable, apsp
from .config import InputDocument, parse_config, parse_document
from .errors import CapExceeded, ConfigError, DegeneratePairError, RoutingError, ScenicError
from .flats import (
    AffineFlat,
    FlatLattice,
    LatticeConfig,
    SiteD,
    bisecting_hyperplane,
    build_lattice,
    densest_flat_route,
    intersect_flats,
)
from .geometry import (
    Arc,
    Box,
    CircleCurve,
    LineCurve,
    Tolerance,
    alpha_shape,
    arc_length,
    convex_hull,
    intersect_circles,
    intersect_line_circle,
    intersect_lines,
    scenic_residual,
)
from .metrics import RouteMetrics, compare_routes, route_metrics
from .routes import (
    ALGORITHMS,
    Planner,
    Route,
    RouteParams,
    route_acch,
    route_acu,
    route_densest_line,
    route_dpe,
    route_minmax_hull,
    run_algorithm,
)
from .scenic_graph import (
    ColoredPoint,
    Config,
    ScenicGraph,
    build_curves,
    build_graph,
    build_scenic_graph,
    pair_coverage,
    scenic_curve,
)
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "AffineFlat",
    "ALGORITHMS",
    "alpha_shape",
    "apsp",
    "ApspTable",
    "Arc",
    "arc_length",
    "bisecting_hyperplane",
    "Box",
    "build_curves",
    "build_graph",
    "build_lattice",
    "build_scenic_graph",
    "CapExceeded",
    "CircleCurve",
    "ColoredPoint",
    "compare_routes",
    "Config",
    "ConfigError",
    "convex_hull",
    "DegeneratePairError",
    "densest_flat_route",
    "FlatLattice",
    "InputDocument",
    "intersect_circles",
    "intersect_flats",
    "intersect_line_circle",
    "intersect_lines",
    "LatticeConfig",
    "LineCurve",
    "pair_coverage",
    "parse_config",
    "parse_document",
    "Planner",
    "render_svg",
    "Route",
    "route_acch",
    "route_acu",
    "route_densest_line",
    "route_dpe",
    "route_metrics",
    "route_minmax_hull",
    "RouteMetrics",
    "RouteParams",
    "RoutingError",
    "run_algorithm",
    "scenic_curve",
    "scenic_residual",
    "ScenicError",
    "ScenicGraph",
    "SiteD",
    "Tolerance",
]
