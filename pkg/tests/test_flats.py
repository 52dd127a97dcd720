import math

import numpy as np
import pytest

from checks import flat_dimension_errors, flat_residual, lattice_matches_graph
from scenic_routes.errors import CapExceeded, ConfigError, DegeneratePairError
from scenic_routes.flats import (
    LatticeConfig,
    SiteD,
    bisecting_hyperplane,
    box_around,
    build_lattice,
    densest_flat_route,
    in_box_point,
    intersect_flats,
    lattice_components,
)
from scenic_routes.scenic_graph import ColoredPoint, Config, build_scenic_graph


def random_sites(rng, d, n_red=None, n_blue=None):
    n_red = n_red or int(rng.integers(1, 4))
    n_blue = n_blue or int(rng.integers(1, 4))
    X = rng.uniform(0, 10, size=(n_red + n_blue, d))
    return [SiteD(i, tuple(X[i]), "red" if i < n_red else "blue") for i in range(len(X))]


def test_bisecting_hyperplane_is_equidistant():
    rng = np.random.default_rng(0)
    r, b = rng.normal(size=4), rng.normal(size=4)
    h = bisecting_hyperplane(r, b)
    assert h.dim == 3 and h.ambient == 4
    for _ in range(10):
        x = h.point(rng.normal(size=3))
        assert abs(np.linalg.norm(x - r) - np.linalg.norm(x - b)) < 1e-12
    with pytest.raises(DegeneratePairError):
        bisecting_hyperplane(r, r)


def test_intersect_flats_dimension_and_parallel():
    e = np.eye(3)
    x = bisecting_hyperplane(-e[0], e[0])
    y = bisecting_hyperplane(-e[1], e[1])
    line = intersect_flats(x, y)
    assert line.dim == 1
    assert np.allclose(np.abs(line.basis[0]), e[2])
    assert intersect_flats(x, bisecting_hyperplane(e[0], 3 * e[0])) is None
    # a flat intersected with a hyperplane that contains it is unchanged
    z = bisecting_hyperplane(-e[0] + e[1], e[0] + e[1])
    assert intersect_flats(line, z).dim == 1


def test_in_box_point_least_norm():
    x = bisecting_hyperplane((4.0, 0.0), (6.0, 0.0))  # x = 5
    lo, hi = np.array([0.0, 2.0]), np.array([10.0, 8.0])
    p = in_box_point(x, lo, hi, 1e-9)
    assert p == pytest.approx([5.0, 2.0], abs=1e-6)
    assert in_box_point(x, np.array([6.0, 0.0]), np.array([9.0, 1.0]), 1e-9) is None


def test_box_around_matches_planar_box():
    pts = np.array([[0.0, 0.0], [4.0, 2.0]])
    lo, hi = box_around(pts, 1.5)
    assert lo.tolist() == [-1.0, -0.5] and hi.tolist() == [5.0, 2.5]


def test_star_configuration_meets_in_one_point():
    # three mirror pairs about the origin: the coordinate planes
    e = np.eye(3)
    sites = [SiteD(i, tuple(-e[i]), "red") for i in range(3)]
    sites += [SiteD(3 + i, tuple(e[i]), "blue") for i in range(3)]
    lat = build_lattice(sites, LatticeConfig(box=([-1.0] * 3, [1.0] * 3)))
    points = [f for f in lat.flats if f.dim == 0]
    origin = [f for f in points if np.allclose(f.base, 0)]
    assert len(origin) == 1
    assert lat.incidence[origin[0].id] >= 3
    assert not flat_dimension_errors(lat, sites)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_random_lattice_dimensions_and_residuals(d):
    rng = np.random.default_rng(d)
    for _ in range(3):
        sites = random_sites(rng, d)
        lat = build_lattice(sites)
        assert not flat_dimension_errors(lat, sites)
        lo, hi = lat.box
        assert flat_residual(lat, sites, rng) <= 1e-9 * float(np.linalg.norm(hi - lo)) ** 2
        for f in lat.flats:
            assert np.all(f.representative >= lo - 1e-6) and np.all(f.representative <= hi + 1e-6)


def test_planar_lattice_matches_scenic_graph():
    rng = np.random.default_rng(42)
    for _ in range(10):
        sites = random_sites(rng, 2)
        lat = build_lattice(sites)
        cfg = Config(tuple(ColoredPoint(s.id, s.coords, s.color) for s in sites))
        g = build_scenic_graph(cfg)
        assert lattice_matches_graph(lat, g)


def test_depth_limit_and_cap():
    rng = np.random.default_rng(1)
    sites = random_sites(rng, 4, 3, 3)
    shallow = build_lattice(sites, LatticeConfig(depth_limit=1))
    assert all(f.dim == 3 for f in shallow.flats)
    with pytest.raises(CapExceeded):
        build_lattice(sites, LatticeConfig(max_flats=5))


def test_lattice_needs_both_colors_and_uniform_dimension():
    with pytest.raises(ConfigError):
        build_lattice([SiteD(0, (0, 0), "red"), SiteD(1, (1, 1), "red")])
    with pytest.raises(ConfigError):
        build_lattice([SiteD(0, (0, 0), "red"), SiteD(1, (1, 1, 1), "blue")])


@pytest.mark.parametrize("seed", range(8))
def test_densest_flat_route_visits_each_flat_once(seed):
    rng = np.random.default_rng(100 + seed)
    d = int(rng.integers(2, 5))
    lat = build_lattice(random_sites(rng, d))
    route = densest_flat_route(lat)
    seq = [i for i in route.sequence if i is not None]
    assert sorted(seq) == list(range(len(lat.flats)))
    assert lat.incidence[seq[0]] == max(lat.incidence)
    comps = lattice_components(lat)
    assert len(route.parts) == len(comps)
    for part in route.parts:
        assert any(sorted(part) == c for c in comps)
    adj = lat.neighbors()
    for hop in route.hops:
        if hop.kind == "adjacent":
            assert hop.dst in adj[hop.src]
        assert math.isfinite(hop.length) and hop.length >= 0
