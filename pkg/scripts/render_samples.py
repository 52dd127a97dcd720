"""Build, route and draw every 2D sample; 3D samples get their flat lattice.

    python3 scripts/render_samples.py --out out/samples
"""

import argparse
import json
from pathlib import Path

from scenic_routes.config import load_json, parse_document
from scenic_routes.errors import ScenicError
from scenic_routes.flats import build_lattice, densest_flat_route
from scenic_routes.routes import ALGORITHMS, Planner, run_algorithm
from scenic_routes.scenic_graph import build_scenic_graph
from scenic_routes.serialize import dumps, graph_to_dict, lattice_to_dict, report_to_dict, write_atomic
from scenic_routes.svg import render_svg

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", default=ROOT / "samples", type=Path)
    ap.add_argument("--out", default=ROOT / "out" / "samples", type=Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for path in sorted(args.samples.glob("*.json")):
        doc = parse_document(load_json(path))
        stem = path.stem
        if doc.dimension != 2:
            lat = build_lattice(doc.sites(), doc.lattice_config())
            write_atomic(args.out / f"{stem}.lattice.json", dumps(lattice_to_dict(lat, densest_flat_route(lat))))
            dims = sorted({f.dim for f in lat.flats})
            print(f"{stem}: {len(lat.flats)} flats (dims {dims}), {len(lat.edges)} lattice edges")
            continue
        g = build_scenic_graph(doc.to_config())
        planner = Planner(g)
        routes, errors = [], {}
        for name in ALGORITHMS:
            try:
                routes.append(run_algorithm(name, g, planner, doc.routing))
            except ScenicError as exc:
                errors[name] = str(exc)
        report = report_to_dict(g, routes, doc.order, errors)
        write_atomic(args.out / f"{stem}.graph.json", dumps(graph_to_dict(g)))
        write_atomic(args.out / f"{stem}.report.json", dumps(report))
        render_svg(g, routes, args.out / f"{stem}.svg")
        for r in routes:
            render_svg(g, [r], args.out / f"{stem}.{r.algorithm}.svg")
        s = g.summary()
        print(f"{stem}: {s['curves']} curves, {s['intersections']} intersections, {s['edges']} edges; "
              f"ranking {report['ranking']}")
        for row in report["metrics"]:
            print("   {algorithm:<12} completeness {completeness:.3f}  scenic {scenic_length:10.2f}  "
                  "connectors {nonscenic_length:9.2f}  repeated {repeated_length:9.2f}  "
                  "edges {edge_count:4d}".format(**row))
        for name, err in errors.items():
            print(f"   {name:<12} skipped: {err}")
    print(json.dumps({"written": str(args.out)}))


if __name__ == "__main__":
    main()
