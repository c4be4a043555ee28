import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SHAPES
from trianglecf.geometry import derive_metrics
from trianglecf.oracle import (
    PlacedTriangle,
    area_integral_check,
    clip_convex,
    fd_derivatives,
    gamma_oracle,
    intersection_area,
    intersection_areas,
    kink_angles,
    polygon_area,
)

UNIT_RIGHT = PlacedTriangle(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))


def pixel_overlap(t, d, n=1000):
    """Brute-force overlap by midpoint sampling on an n x n grid."""
    v = t.vertices
    lo, hi = v.min(0), v.max(0)
    xs = lo[0] + (np.arange(n) + 0.5) / n * (hi[0] - lo[0])
    ys = lo[1] + (np.arange(n) + 0.5) / n * (hi[1] - lo[1])
    X, Y = np.meshgrid(xs, ys)

    def inside(w):
        ok = np.ones_like(X, dtype=bool)
        for i in range(3):
            p, q = w[i], w[(i + 1) % 3]
            ok &= (q[0] - p[0]) * (Y - p[1]) - (q[1] - p[1]) * (X - p[0]) >= 0
        return ok

    cell = (hi[0] - lo[0]) * (hi[1] - lo[1]) / n**2
    return (inside(v) & inside(v + d)).sum() * cell


def test_intersection_examples():
    assert intersection_area(UNIT_RIGHT, (0, 0)) == pytest.approx(0.5, rel=1e-15)
    assert intersection_area(UNIT_RIGHT, (0.5, 0)) == pytest.approx(0.125, rel=1e-14)
    assert pixel_overlap(UNIT_RIGHT, np.array([0.5, 0.0])) == pytest.approx(0.125, abs=2e-3)
    assert intersection_area(UNIT_RIGHT, (1.5, 0.1)) == 0.0
    assert intersection_areas(UNIT_RIGHT, [[0.5, 0.0], [0.0, 0.0]]) == pytest.approx([0.125, 0.5])


def test_beyond_longest_chord(shape_tri):
    t = PlacedTriangle.from_metrics(shape_tri)
    for phi in np.linspace(0, 2 * math.pi, 13):
        d = shape_tri.c * np.array([math.cos(phi), math.sin(phi)])
        assert intersection_area(t, d) == 0.0
        assert intersection_areas(t, [d * 1.0001])[0] == 0.0


def test_clip_matches_pixels():
    t = PlacedTriangle.from_metrics(SHAPES["D"])
    d = np.array([0.3, 0.05])
    assert intersection_area(t, d) == pytest.approx(pixel_overlap(t, d, 1500), abs=2e-3)
    poly = clip_convex(t.vertices + d, t.vertices)
    assert 3 <= len(poly) <= 6
    assert polygon_area(poly) == intersection_area(t, d)


def test_vectorised_matches_clipping(shape_tri):
    t = PlacedTriangle.from_metrics(shape_tri)
    rng = np.random.default_rng(1)
    d = rng.uniform(-shape_tri.c, shape_tri.c, size=(500, 2))
    fast = intersection_areas(t, d)
    slow = np.array([intersection_area(t, x) for x in d])
    assert np.max(np.abs(fast - slow)) < 1e-13


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(SHAPES)), st.floats(-3, 3), st.floats(-3, 3))
def test_area_symmetric(key, dx, dy):
    t = PlacedTriangle.from_metrics(SHAPES[key])
    assert intersection_area(t, (dx, dy)) == pytest.approx(intersection_area(t, (-dx, -dy)), abs=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(sorted(SHAPES)), st.floats(0, 2 * math.pi))
def test_area_nonincreasing_along_ray(key, phi):
    t = PlacedTriangle.from_metrics(SHAPES[key])
    u = np.array([math.cos(phi), math.sin(phi)])
    ds = np.linspace(0, SHAPES[key].c, 200)[:, None] * u
    a = intersection_areas(t, ds)
    assert np.all(np.diff(a) <= 1e-14)


def test_kinks_are_structure_changes():
    t = PlacedTriangle.from_metrics(SHAPES["A"])
    ks = kink_angles(t, 0.7)
    assert ks[0] == 0.0 and ks[-1] == math.pi
    # between kinks the overlap is smooth: a 5-term trig polynomial fits exactly
    for lo, hi in zip(ks[:-1], ks[1:]):
        if hi - lo < 1e-3:
            continue
        phi = np.linspace(lo, hi, 12)[1:-1]
        a = intersection_areas(t, 0.7 * np.column_stack([np.cos(phi), np.sin(phi)]))
        basis = np.column_stack([np.ones_like(phi), np.cos(phi), np.sin(phi), np.cos(2 * phi), np.sin(2 * phi)])
        coef, *_ = np.linalg.lstsq(basis, a, rcond=None)
        assert np.max(np.abs(basis @ coef - a)) < 1e-12


def test_gamma_oracle_trivial(shape_tri):
    t = PlacedTriangle.from_metrics(shape_tri)
    assert gamma_oracle(t, 0.0) == 1.0
    assert gamma_oracle(t, shape_tri.c) == 0.0
    assert gamma_oracle(shape_tri, 2 * shape_tri.c) == 0.0
    g = gamma_oracle(t, 0.5 * shape_tri.c)
    assert 0.0 < g < 1.0


def test_rigid_motion_invariance():
    m = SHAPES["B"]
    t = PlacedTriangle.from_metrics(m)
    rng = np.random.default_rng(3)
    rs = [0.1, 0.55, 0.93, 1.1]
    ref = [gamma_oracle(t, r, 1e-12) for r in rs]
    for _ in range(10):
        moved = t.moved(rng.uniform(0, 2 * math.pi), rng.uniform(-5, 5, 2))
        assert moved.area == pytest.approx(m.S, rel=1e-12)
        got = [gamma_oracle(moved, r, 1e-12) for r in rs]
        assert got == pytest.approx(ref, abs=1e-9)


def test_placed_triangle_properties(shape_tri):
    t = PlacedTriangle.from_metrics(shape_tri)
    assert t.area == pytest.approx(shape_tri.S, rel=1e-12)
    # clockwise input is reoriented
    cw = PlacedTriangle(t.vertices[::-1])
    assert cw.area == pytest.approx(shape_tri.S, rel=1e-12)


def test_fd_derivative_examples(shape_tri):
    m = shape_tri
    t = PlacedTriangle.from_metrics(m)
    vertex_sum = sum((math.pi - p) / math.tan(p) + 1 for p in (m.alpha, m.beta, m.gamma_ang))
    step = 1e-5 * m.c
    r = 3 * step
    d1, _ = fd_derivatives(t, r, step)
    # gamma is quadratic below h_c, so the slope at r is exact up to round-off
    slope0 = -m.L / (math.pi * m.S)
    assert d1 == pytest.approx(slope0 + r * vertex_sum / (2 * math.pi * m.S), rel=1e-6)
    assert d1 == pytest.approx(slope0, rel=1e-3)
    _, d2 = fd_derivatives(t, 0.5 * m.h_c, 1e-3 * m.c)
    assert d2 == pytest.approx(vertex_sum / (2 * math.pi * m.S), rel=1e-5)


def test_fd_second_order_convergence():
    from trianglecf.cf_eval import CorrelationFunction

    m = SHAPES["A"]
    cf = CorrelationFunction.from_metrics(m)
    t = PlacedTriangle.from_metrics(m)
    r = 0.5 * (m.h_a + m.b)
    exact = cf.first_derivative(r)
    e1 = abs(fd_derivatives(t, r, 1e-3 * m.c, tol=1e-15)[0] - exact)
    e2 = abs(fd_derivatives(t, r, 5e-4 * m.c, tol=1e-15)[0] - exact)
    assert e1 / e2 == pytest.approx(4.0, rel=0.1)


@pytest.mark.parametrize("sides", [(1, 1, 1), (3, 4, 5), (1, 1.5, 2.470)])
def test_area_integral_check(sides):
    m = derive_metrics(sides)
    assert area_integral_check(m) == pytest.approx(m.S, rel=1e-6)


def test_oracle_independent_of_closed_form():
    import ast
    import inspect

    import trianglecf.oracle as oracle

    tree = ast.parse(inspect.getsource(oracle))
    imported = {n.module for n in ast.walk(tree) if isinstance(n, ast.ImportFrom) and n.module}
    assert "omega" not in imported and "cf_eval" not in imported
