"""Hankel transform of the correlation function and the area moment."""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np
from scipy.special import j0

from .cf_eval import CorrelationFunction
from .quadrature import adaptive_gk15

__all__ = ["form_factor", "form_factors", "normalization_integral"]


def _gamma_vec(cf: CorrelationFunction):
    def f(rs: np.ndarray) -> np.ndarray:
        return np.array([cf.correlation(float(r)) for r in rs])

    return f


def form_factor(cf: CorrelationFunction, q: float, tol: float = 1e-10) -> float:
    """``F(q) = 2 pi int_0^c gamma(r) r J0(q r) dr``; ``F(0)`` is the area."""
    if q < 0.0:
        raise ValueError(f"q must be non-negative, got {q!r}")
    g = _gamma_vec(cf)
    c = cf.metrics.c
    pts = list(cf.ladder.points)
    # one panel per half-period of J0 keeps Gauss-Kronrod away from aliasing
    if q > 0.0:
        pts += list(np.arange(1, int(q * c / math.pi) + 1) * (math.pi / q))
    pts = sorted(p for p in set(pts) if p <= c)
    val, _ = adaptive_gk15(
        lambda rs: 2.0 * math.pi * rs * g(rs) * j0(q * rs), pts, tol * cf.metrics.S
    )
    return val


def form_factors(cf: CorrelationFunction, qs: Iterable[float], tol: float = 1e-10) -> list[float]:
    return [form_factor(cf, float(q), tol) for q in qs]


def normalization_integral(cf: CorrelationFunction, tol: float = 1e-10) -> float:
    """``int_0^c 2 pi r gamma(r) dr`` from the closed form; equals the area."""
    return form_factor(cf, 0.0, tol)
