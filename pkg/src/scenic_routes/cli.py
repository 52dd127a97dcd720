"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 data error, 4 size cap exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .apsp import apsp
from .config import InputDocument, load_json, parse_document
from .errors import CapExceeded, ScenicError
from .flats import densest_flat_route, build_lattice
from .geometry import Box
from .metrics import ORDER_PRESETS
from .routes import ALGORITHMS, Planner, RouteParams, run_algorithm
from .scenic_graph import ScenicGraph, build_scenic_graph
from .serialize import (
    GRAPH_TYPE,
    dumps,
    graph_from_dict,
    graph_to_dict,
    lattice_to_dict,
    report_to_dict,
    route_from_dict,
    write_atomic,
)
from .svg import render_svg

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CAP = 0, 2, 3, 4

log = logging.getLogger("scenic_routes")


class DataError(ScenicError):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scenic", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out_help="output file (default: stdout)"):
        sp.add_argument("--input", required=True, help="input JSON document")
        sp.add_argument("--out", help=out_help)

    def box_opts(sp):
        sp.add_argument("--box", type=_floats, help="explicit box xmin,ymin,xmax,ymax")
        sp.add_argument("--expand", type=float, help="auto-box expansion factor (>= 1)")
        sp.add_argument("--tolerance", type=float, help="absolute tolerance eps (default 1e-9)")

    sp = sub.add_parser("build-graph", help="build the scenic graph of a 2D configuration")
    common(sp)
    box_opts(sp)

    sp = sub.add_parser("route", help="generate scenic routes and a metrics report")
    common(sp)
    box_opts(sp)
    sp.add_argument("--algorithm", choices=ALGORITHMS + ("all",), default="all")
    sp.add_argument("--order", choices=sorted(ORDER_PRESETS), help="requirement priority preset")
    sp.add_argument("--alpha", type=float, help="alpha-shape parameter for densest-line")
    sp.add_argument("--top-k", type=int, help="number of lines for densest-line")
    sp.add_argument("--distance-bound", type=float, help="node radius filter for minmax-hull")
    sp.add_argument("--max-nodes", type=int, help="node cap for all-pairs routing (default 2000)")

    sp = sub.add_parser("metrics", help="score routes from a report against a graph")
    common(sp)
    sp.add_argument("--routes", required=True, help="report JSON holding routes")
    sp.add_argument("--order", choices=sorted(ORDER_PRESETS), default="sec3")

    sp = sub.add_parser("render", help="draw a graph (and optional routes) as SVG")
    common(sp, "SVG output file (default: stdout)")
    sp.add_argument("--routes", help="report JSON whose routes are drawn")

    sp = sub.add_parser("flats", help="build the R^d flat lattice and its densest-flat route")
    common(sp)
    sp.add_argument("--dim", type=int, help="expected coordinate dimension")
    sp.add_argument("--depth-limit", type=int)
    sp.add_argument("--max-flats", type=int)
    sp.add_argument("--box", type=_floats, help="explicit box lo1,...,lod,hi1,...,hid")
    sp.add_argument("--expand", type=float)
    sp.add_argument("--tolerance", type=float)
    return p


def _emit(text: str, out: str | None):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _config_from(doc: InputDocument, args):
    box = None
    if getattr(args, "box", None) is not None:
        if len(args.box) != 4:
            raise DataError("--box takes four numbers: xmin,ymin,xmax,ymax")
        try:
            box = Box(*args.box)
        except ValueError as exc:
            raise DataError(str(exc)) from None
    return doc.to_config(box=box, expand=args.expand, eps_abs=args.tolerance)


def _load_graph(path) -> tuple[ScenicGraph, InputDocument | None]:
    data = load_json(path)
    if isinstance(data, dict) and data.get("type") == GRAPH_TYPE:
        return graph_from_dict(data), None
    doc = parse_document(data)
    return None, doc


def cmd_build_graph(args):
    doc = parse_document(load_json(args.input))
    g = build_scenic_graph(_config_from(doc, args))
    _emit(dumps(graph_to_dict(g)), args.out)


def _run_routes(g: ScenicGraph, names, params: RouteParams, max_nodes: int = 2000):
    planner = Planner(g, apsp(g, max_nodes))
    routes, errors = [], {}
    for name in names:
        try:
            routes.append(run_algorithm(name, g, planner, params))
        except ScenicError as exc:
            if len(names) == 1:
                raise
            errors[name] = str(exc)
    return routes, errors


def cmd_route(args):
    g, doc = _load_graph(args.input)
    params, order, max_nodes = RouteParams(), "sec3", 2000
    if doc is not None:
        g = build_scenic_graph(_config_from(doc, args))
        params, order, max_nodes = doc.routing, doc.order, doc.max_nodes
    for field in ("alpha", "top_k", "distance_bound"):
        if getattr(args, field) is not None:
            setattr(params, field, getattr(args, field))
    order = args.order or order
    if args.max_nodes is not None:
        max_nodes = args.max_nodes
    names = list(ALGORITHMS) if args.algorithm == "all" else [args.algorithm]
    routes, errors = _run_routes(g, names, params, max_nodes)
    _emit(dumps(report_to_dict(g, routes, order, errors)), args.out)


def cmd_metrics(args):
    g, doc = _load_graph(args.input)
    if g is None:
        raise DataError("metrics needs a graph document; run build-graph first")
    report = load_json(args.routes)
    if not isinstance(report, dict) or "routes" not in report:
        raise DataError(f"{args.routes} holds no routes")
    routes = [route_from_dict(r) for r in report["routes"]]
    _emit(dumps(report_to_dict(g, routes, args.order)), args.out)


def cmd_render(args):
    g, doc = _load_graph(args.input)
    if g is None:
        if doc is not None and doc.dimension != 2:
            raise DataError("only 2D graphs can be rendered; export the flat lattice as JSON instead")
        raise DataError("render needs a graph document; run build-graph first")
    routes = []
    if args.routes:
        report = load_json(args.routes)
        routes = [route_from_dict(r) for r in report.get("routes", [])]
    _emit(render_svg(g, routes), args.out)


def cmd_flats(args):
    doc = parse_document(load_json(args.input))
    if args.dim is not None and doc.dimension != args.dim:
        raise DataError(f"--dim {args.dim} does not match the {doc.dimension}-dimensional points")
    box = None
    if args.box is not None:
        d = doc.dimension
        if len(args.box) != 2 * d:
            raise DataError(f"--box needs {2 * d} numbers for dimension {d}")
        box = (args.box[:d], args.box[d:])
    cfg = doc.lattice_config(box=box, expand=args.expand, depth_limit=args.depth_limit,
                             max_flats=args.max_flats, eps_abs=args.tolerance)
    lat = build_lattice(doc.sites(), cfg)
    route = densest_flat_route(lat) if lat.flats else None
    _emit(dumps(lattice_to_dict(lat, route)), args.out)


COMMANDS = {
    "build-graph": cmd_build_graph,
    "route": cmd_route,
    "metrics": cmd_metrics,
    "render": cmd_render,
    "flats": cmd_flats,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except CapExceeded as exc:
        print(f"scenic: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ScenicError, ValueError) as exc:
        print(f"scenic: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
