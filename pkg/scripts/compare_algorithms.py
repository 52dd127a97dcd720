"""Score the five route generators on random configurations.

Prints mean metrics per algorithm and how often each one ranks first under
the chosen requirement order.

    python3 scripts/compare_algorithms.py --configs 100 --order sec3
"""

import argparse
import random
from collections import Counter, defaultdict

from scenic_routes.errors import RoutingError
from scenic_routes.metrics import ORDER_PRESETS, route_metrics, sort_key
from scenic_routes.routes import ALGORITHMS, Planner, run_algorithm
from scenic_routes.scenic_graph import ColoredPoint, Config, build_scenic_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--configs", type=int, default=100)
    ap.add_argument("--max-per-color", type=int, default=5)
    ap.add_argument("--weighted", action="store_true")
    ap.add_argument("--order", choices=sorted(ORDER_PRESETS), default="sec3")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    sums = defaultdict(Counter)
    ran = Counter()
    wins = Counter()
    for _ in range(args.configs):
        n_red, n_blue = rng.randint(1, args.max_per_color), rng.randint(1, args.max_per_color)
        pts = tuple(ColoredPoint(i, (rng.uniform(0, 10), rng.uniform(0, 10)),
                                 "red" if i < n_red else "blue",
                                 rng.uniform(0.5, 3) if args.weighted else 1.0)
                    for i in range(n_red + n_blue))
        g = build_scenic_graph(Config(pts))
        planner = Planner(g)
        scored = {}
        for name in ALGORITHMS:
            try:
                m = route_metrics(g, run_algorithm(name, g, planner))
            except RoutingError:
                continue
            ran[name] += 1
            scored[name] = m
            for k, v in m.to_dict().items():
                sums[name][k] += v
        best = min(scored, key=lambda a: (sort_key(scored[a], args.order), a))
        wins[best] += 1

    cols = ["completeness", "scenic_length", "nonscenic_length", "repeated_length", "edge_count"]
    print(f"{'algorithm':<13}{'runs':>5}" + "".join(f"{c:>18}" for c in cols) + f"{'wins':>6}")
    for name in ALGORITHMS:
        k = ran[name] or 1
        print(f"{name:<13}{ran[name]:>5}" + "".join(f"{sums[name][c] / k:>18.3f}" for c in cols)
              + f"{wins[name]:>6}")


if __name__ == "__main__":
    main()
