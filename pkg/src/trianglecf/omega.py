"""Special functions of the triangle correlation function.

``omega2(x)`` is the shape factor entering the second derivative through
``omega2(h / r)``; ``omega1(h, x)`` is its antiderivative in ``x`` and
``omega_cap(h, x)`` the antiderivative of ``omega1``.  All three vanish or
reduce to elementary limits at ``x = h`` and are evaluated there exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import mpmath
import numpy as np

from .errors import DomainError
from .geometry import TriangleMetrics

__all__ = [
    "AngularConstants",
    "omega2",
    "omega2_prime",
    "omega1",
    "omega_cap",
    "omega1_diff",
    "omega_cap_diff",
    "omega1_remainder",
    "omega_cap_remainder",
    "angular_constants",
    "curvature_sum",
]

CLAMP_TOL = 1e-9


def _check_ratio(x: float) -> float:
    if not (-CLAMP_TOL <= x <= 1.0 + CLAMP_TOL):
        raise DomainError(f"omega2 argument {x!r} outside [0, 1]")
    return min(max(x, 0.0), 1.0)


def _check_pair(h: float, x: float) -> float:
    """Return ``sqrt(x^2 - h^2)``, zero when ``x`` is within tolerance of ``h``."""
    if h <= 0.0:
        raise DomainError(f"height must be positive, got {h!r}")
    if x < h * (1.0 - CLAMP_TOL):
        raise DomainError(f"x={x!r} lies below h={h!r}")
    if x <= h:
        return 0.0
    return math.sqrt((x - h) * (x + h))


def omega2(x: float) -> float:
    x = _check_ratio(x)
    if x == 1.0:
        return 0.0
    s = math.sqrt((1.0 - x) * (1.0 + x))
    return -2.0 * x * s - 2.0 * math.atan2(s, x)


def omega2_prime(x: float) -> float:
    """Derivative ``4 x^2 / sqrt(1 - x^2)``; infinite at ``x = 1``."""
    x = _check_ratio(x)
    if x == 1.0:
        return math.inf
    return 4.0 * x * x / math.sqrt((1.0 - x) * (1.0 + x))


def omega1(h: float, x: float) -> float:
    root = _check_pair(h, x)
    if root == 0.0:
        return 0.0
    # arccos(h/x) written as atan2 to keep accuracy as x -> h
    return 2.0 * h * root / x - 2.0 * x * math.atan2(root, h)


def omega_cap(h: float, x: float) -> float:
    root = _check_pair(h, x)
    if root == 0.0:
        return math.pi * h * h
    x2 = x * x
    return -0.5 * math.pi * x2 + 3.0 * h * root + (x2 + 2.0 * h * h) * math.atan2(h, root)


def omega1_diff(h: float, r: float, p: float) -> float:
    """``omega1(h, r) - omega1(h, p)``."""
    if r == p:
        return 0.0
    return omega1(h, r) - omega1(h, p)


def omega_cap_diff(h: float, r: float, p: float) -> float:
    """Second-order remainder ``Omega(h,r) - Omega(h,p) - omega1(h,p) (r - p)``.

    Vanishes together with its first ``r`` derivative at ``r = p``.
    """
    if r == p:
        return 0.0
    return omega_cap(h, r) - omega_cap(h, p) - omega1(h, p) * (r - p)


_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


def _angle_gap(h: float, r: float, p: float) -> tuple[float, float]:
    """``(t_r, t_r - t_p)`` with ``t_x = arccos(h / x)``.

    The gap comes from the tangent subtraction formula so it keeps full
    relative precision when ``r`` and ``p`` nearly coincide.
    """
    wr, wp = _check_pair(h, r), _check_pair(h, p)
    tr = math.atan2(wr, h)
    num = h * (r - p) * (r + p) / (wr + wp)
    return tr, math.atan2(num, h * h + wr * wp)


def _cos_gap_integral(h: float, r: float, p: float, power: int) -> float:
    """``int_{t_p}^{t_r} (cos t - cos t_r)^power * cos(t)^(2 - power) dt``.

    The integrand keeps one sign on the range and is entire in ``t``, so a
    fixed Gauss-Legendre rule is exact to round-off.  Nodes are placed by
    their offset ``u = t - t_r`` and the cosine difference is formed as a
    product of sines.
    """
    tr, gap = _angle_gap(h, r, p)
    half = 0.5 * gap
    u = half * (_GL_X - 1.0)
    diff = -2.0 * np.sin(tr + 0.5 * u) * np.sin(0.5 * u)
    vals = diff**power * np.cos(tr + u) ** (2 - power)
    return float(half * np.dot(_GL_W, vals))


def omega1_remainder(h: float, r: float, p: float) -> float:
    """First-order Taylor remainder of ``omega1(h, .)`` about ``p``.

    ``omega1(h, r) - omega1(h, p) - omega2(h / p) (r - p)``, evaluated without
    cancellation via the substitution ``s = h / cos(t)``.
    """
    if r == p:
        return 0.0
    return -4.0 * r * _cos_gap_integral(h, r, p, 1)


def omega_cap_remainder(h: float, r: float, p: float) -> float:
    """Second-order Taylor remainder of ``omega_cap(h, .)`` about ``p``.

    Equals ``omega_cap_diff(h, r, p) - omega2(h / p) (r - p)^2 / 2``; it is
    O(|r - p|^3) and carries full relative precision even where the direct
    difference would cancel.
    """
    if r == p:
        return 0.0
    return -2.0 * r * r * _cos_gap_integral(h, r, p, 2)


@dataclass(frozen=True)
class AngularConstants:
    A_const: float
    B_const: float
    C_const: float
    c_ab: float
    c_ag: float
    c_bg: float


def _cot(t: float) -> float:
    return math.cos(t) / math.sin(t)


def angular_constants(m: TriangleMetrics) -> AngularConstants:
    al, be, ga = m.alpha, m.beta, m.gamma_ang
    ca, cb, cg = _cot(al), _cot(be), _cot(ga)
    pi = math.pi
    return AngularConstants(
        A_const=3.0 + (pi - al) * ca + (pi - be) * cb + (pi - ga) * cg,
        B_const=(pi - 2.0 * al) * ca + (pi - 2.0 * be) * cb + 2.0 * (1.0 + ga * cg),
        C_const=4.0 + 2.0 * (pi - 2.0 * al) * ca + pi * cb + pi * cg,
        c_ab=ca + cb,
        c_ag=ca + cg,
        c_bg=cb + cg,
    )


def curvature_sum(
    m: TriangleMetrics, constant: str, terms: Iterable[tuple[str, str, int]], p: float, dps: int = 34
) -> float:
    """``K + sum(mult * c_pair * omega2(h / p))`` rounded once to double.

    The float metrics are taken as exact and the sum is carried out in
    ``dps`` digits.  For flat triangles the constant and the terms are a few
    hundred while the sum is of order one, so plain double arithmetic would
    lose two to three digits here.
    """
    with mpmath.workdps(dps):
        pi = mpmath.pi
        al, be, ga = (mpmath.mpf(t) for t in (m.alpha, m.beta, m.gamma_ang))
        ca, cb, cg = mpmath.cot(al), mpmath.cot(be), mpmath.cot(ga)
        k = {
            "A_const": 3 + (pi - al) * ca + (pi - be) * cb + (pi - ga) * cg,
            "B_const": (pi - 2 * al) * ca + (pi - 2 * be) * cb + 2 * (1 + ga * cg),
            "C_const": 4 + 2 * (pi - 2 * al) * ca + pi * cb + pi * cg,
            "c_ab": ca + cb,
            "c_ag": ca + cg,
            "c_bg": cb + cg,
        }
        total = k[constant]
        for height, pair, mult in terms:
            x = min(mpmath.mpf(getattr(m, height)) / mpmath.mpf(p), mpmath.mpf(1))
            total += mult * k[pair] * (-2 * x * mpmath.sqrt(1 - x * x) - 2 * mpmath.acos(x))
        return float(total)
