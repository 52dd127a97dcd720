"""Time graph construction and all-pairs routing as the number of sites grows.

    python3 scripts/scaling_study.py --sizes 2 4 6 8 10 12 --repeats 3
"""

import argparse
import random
import statistics
import time

from scenic_routes.apsp import apsp
from scenic_routes.errors import CapExceeded
from scenic_routes.routes import Planner, route_dpe
from scenic_routes.scenic_graph import ColoredPoint, Config, build_scenic_graph


def random_sites(rng, n, weighted):
    pts = []
    for i in range(2 * n):
        w = rng.uniform(0.5, 3.0) if weighted else 1.0
        pts.append(ColoredPoint(i, (rng.uniform(0, 100), rng.uniform(0, 100)), "red" if i < n else "blue", w))
    return Config(tuple(pts))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 6, 8, 10, 12])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--weighted", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print(f"{'|R|=|B|':>8} {'curves':>7} {'nodes':>7} {'edges':>7} {'build s':>9} {'apsp s':>9} {'dpe s':>9}")
    for n in args.sizes:
        rows = []
        for _ in range(args.repeats):
            cfg = random_sites(rng, n, args.weighted)
            t0 = time.perf_counter()
            g = build_scenic_graph(cfg)
            t1 = time.perf_counter()
            try:
                table = apsp(g)
            except CapExceeded:
                rows.append((len(g.curves), len(g.nodes), len(g.edges), t1 - t0, float("nan"), float("nan")))
                continue
            t2 = time.perf_counter()
            route_dpe(g, Planner(g, table))
            t3 = time.perf_counter()
            rows.append((len(g.curves), len(g.nodes), len(g.edges), t1 - t0, t2 - t1, t3 - t2))
        med = [statistics.median(col) for col in zip(*rows)]
        print(f"{n:>8} {med[0]:>7.0f} {med[1]:>7.0f} {med[2]:>7.0f} {med[3]:>9.3f} {med[4]:>9.3f} {med[5]:>9.3f}")


if __name__ == "__main__":
    main()
