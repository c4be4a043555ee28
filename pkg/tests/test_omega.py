import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trianglecf.checks import random_triangles
from trianglecf.errors import DomainError
from trianglecf.geometry import derive_metrics
from trianglecf.omega import (
    angular_constants,
    omega1,
    omega1_diff,
    omega1_remainder,
    omega2,
    omega2_prime,
    omega_cap,
    omega_cap_diff,
    omega_cap_remainder,
)


def test_omega2_values():
    assert omega2(1.0) == 0.0
    assert omega2(0.0) == pytest.approx(-math.pi, rel=1e-15)
    # mpmath, 50 digits
    assert omega2(0.5) == pytest.approx(-2.9604205061776341391, rel=1e-15)
    assert omega2(1.0 + 5e-10) == 0.0


@pytest.mark.parametrize("x", [-1e-8, 1.0 + 1e-8, 2.0])
def test_omega2_domain(x):
    with pytest.raises(DomainError):
        omega2(x)


def test_omega2_monotone():
    xs = np.linspace(0, 1, 2001)
    v = np.array([omega2(x) for x in xs])
    assert np.all(np.diff(v) > 0)
    assert v.min() >= -math.pi - 1e-15 and v.max() <= 0.0


def test_omega1_values():
    assert omega1(1.3, 1.3) == 0.0
    assert omega1(1.0, 2.0) == pytest.approx(-2.4567393972175136911, rel=1e-15)
    assert omega1(1.0, 2.0) == pytest.approx(math.sqrt(3) - 4 * math.pi / 3, rel=1e-15)
    with pytest.raises(DomainError):
        omega1(1.0, 0.99)


def test_omega1_derivative_example():
    h, x, dx = 1.0, 2.0, 1e-5
    fd = (omega1(h, x + dx) - omega1(h, x - dx)) / (2 * dx)
    assert fd == pytest.approx(omega2(0.5), abs=1e-8)


def test_omega_cap_values():
    assert omega_cap(0.7, 0.7) == pytest.approx(math.pi * 0.49, rel=1e-15)
    assert omega_cap(1.0, 2.0) == pytest.approx(2.0545597691168386421, rel=1e-14)
    assert omega_cap(1.0, 2.0) == pytest.approx(-2 * math.pi + 3 * math.sqrt(3) + math.pi, rel=1e-14)
    h, x, dx = 1.0, 1.5, 1e-5
    fd = (omega_cap(h, x + dx) - omega_cap(h, x - dx)) / (2 * dx)
    assert fd == pytest.approx(omega1(h, x), abs=1e-8)


def test_differences():
    assert omega1_diff(1.0, 1.7, 1.7) == 0.0
    assert omega1_diff(1.0, 2.0, 1.0) == omega1(1.0, 2.0)
    assert omega1_diff(1.0, 2.0, 1.4) == -omega1_diff(1.0, 1.4, 2.0)
    assert omega_cap_diff(1.0, 1.5, 1.5) == 0.0
    assert omega_cap_diff(1.0, 2.0, 1.5) == pytest.approx(-0.35034598745697006904, rel=1e-13)
    dx = 1e-4
    slope = (omega_cap_diff(1.0, 1.5 + dx, 1.5) - omega_cap_diff(1.0, 1.5 - dx, 1.5)) / (2 * dx)
    assert abs(slope) < 1e-8


# (h, r, p) -> (first-order, second-order) remainders, mpmath at 80 digits
REMAINDERS = {
    (1.0, 2.0, 1.5): (-0.086272704945699199721, -0.015852821064999188633),
    (1.0, 1.5, 2.0): (-0.05596488257523434817, 0.0082758654723829757458),
    (0.5, 3.0, 3.0000001): (-3.1302006529658148441e-17, 1.0434002042715197408e-24),
    (1.0, 1.0, 1.25): (-0.15299778241343122639, 0.010503326379853160408),
    (0.25, 2.47, 2.4): (-4.4659914173763164027e-6, -1.0520290346251077479e-7),
}


@pytest.mark.parametrize("hrp", sorted(REMAINDERS))
def test_remainder_values(hrp):
    r1, r2 = REMAINDERS[hrp]
    assert omega1_remainder(*hrp) == pytest.approx(r1, rel=1e-13)
    assert omega_cap_remainder(*hrp) == pytest.approx(r2, rel=1e-13)


def test_remainder_matches_difference():
    h, r, p = 1.0, 2.0, 1.5
    dr = r - p
    assert omega1_remainder(h, r, p) == pytest.approx(
        omega1_diff(h, r, p) - omega2(h / p) * dr, rel=1e-13
    )
    assert omega_cap_remainder(h, r, p) == pytest.approx(
        omega_cap_diff(h, r, p) - 0.5 * omega2(h / p) * dr * dr, rel=1e-13
    )
    assert omega1_remainder(h, p, p) == 0.0 and omega_cap_remainder(h, p, p) == 0.0


@st.composite
def h_x(draw):
    h = draw(st.floats(0.01, 10.0))
    return h, h * draw(st.floats(1.01, 20.0))


@settings(max_examples=200, deadline=None)
@given(h_x())
def test_antiderivative_chain(hx):
    h, x = hx
    dx = 1e-5 * x
    d1 = (omega1(h, x + dx) - omega1(h, x - dx)) / (2 * dx)
    d0 = (omega_cap(h, x + dx) - omega_cap(h, x - dx)) / (2 * dx)
    assert d1 == pytest.approx(omega2(h / x), abs=1e-7)
    assert d0 == pytest.approx(omega1(h, x), abs=1e-7 * max(1.0, x))


@settings(max_examples=200, deadline=None)
@given(h_x(), st.floats(0.05, 20.0))
def test_scaling(hx, lam):
    h, x = hx
    assert omega1(lam * h, lam * x) == pytest.approx(lam * omega1(h, x), rel=1e-12, abs=1e-14)
    assert omega_cap(lam * h, lam * x) == pytest.approx(lam**2 * omega_cap(h, x), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 0.999))
def test_omega2_prime(x):
    dx = 1e-6 * (1 - x) + 1e-9
    lo = max(0.0, x - dx)
    fd = (omega2(x + dx) - omega2(lo)) / (x + dx - lo)
    assert fd == pytest.approx(omega2_prime(x), rel=1e-5, abs=1e-7)


def test_angular_constants_equilateral():
    k = angular_constants(derive_metrics((1, 1, 1)))
    assert k.A_const == pytest.approx(3 + 2 * math.pi / math.sqrt(3), rel=1e-15)
    assert k.A_const == pytest.approx(6.6275987284684357012, rel=1e-15)
    assert k.c_ab == k.c_ag == k.c_bg == pytest.approx(2 / math.sqrt(3), rel=1e-15)


def test_right_angle_term_vanishes():
    m = derive_metrics((3, 4, 5))
    k = angular_constants(m)
    ca, cb = 4 / 3, 3 / 4
    assert k.A_const == pytest.approx(3 + (math.pi - m.alpha) * ca + (math.pi - m.beta) * cb, rel=1e-14)
    assert k.c_ag == pytest.approx(ca, rel=1e-14)


def test_vertex_sum_identity_random():
    for m in random_triangles(100, seed=7):
        k = angular_constants(m)
        vertex_sum = sum((math.pi - p) / math.tan(p) + 1 for p in (m.alpha, m.beta, m.gamma_ang))
        assert k.A_const == pytest.approx(vertex_sum, rel=1e-12)
        cots = [1 / math.tan(p) for p in (m.alpha, m.beta, m.gamma_ang)]
        assert k.c_ab + k.c_ag + k.c_bg == pytest.approx(2 * sum(cots), rel=1e-12)
        assert k.c_ab > 0
        if m.gamma_ang < math.pi / 2:
            assert min(k.c_ab, k.c_ag, k.c_bg) > 0
        for v in (k.A_const, k.B_const, k.C_const, k.c_ab, k.c_ag, k.c_bg):
            assert math.isfinite(v)
