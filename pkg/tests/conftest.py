import random
import sys
from pathlib import Path

import pytest

from scenic_routes.geometry import Box
from scenic_routes.scenic_graph import ColoredPoint, Config

sys.path.insert(0, str(Path(__file__).parent))

SAMPLES = Path(__file__).resolve().parents[1] / "samples"


def random_config(rng: random.Random, max_red=5, max_blue=5, weighted=True, span=10.0, **kw) -> Config:
    n_red = rng.randint(1, max_red)
    n_blue = rng.randint(1, max_blue)
    pts = []
    for i in range(n_red + n_blue):
        w = rng.uniform(0.5, 3.0) if weighted else 1.0
        color = "red" if i < n_red else "blue"
        pts.append(ColoredPoint(i, (rng.uniform(0, span), rng.uniform(0, span)), color, w))
    return Config(tuple(pts), **kw)


def figure1_config() -> Config:
    pts = [
        ColoredPoint(0, (0.0, 0.0), "red"),
        ColoredPoint(1, (4.0, 0.0), "blue"),
        ColoredPoint(2, (0.0, 2.0), "blue"),
        ColoredPoint(3, (1.0, 4.0), "blue"),
    ]
    return Config(tuple(pts), box=Box(-1.0, -1.0, 6.0, 5.0))


@pytest.fixture
def fig1():
    return figure1_config()


@pytest.fixture
def samples_dir():
    return SAMPLES


def pytest_terminal_summary(terminalreporter):
    from checks import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
