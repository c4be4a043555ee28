"""Canonical triangle metrics, shape-case classification and breakpoint ladder.

Sides are renamed so that ``a <= b <= c``; vertex ``A`` is opposite ``a`` and
so on.  The four shape cases depend on whether the largest angle is obtuse
and on whether the shortest side exceeds its own altitude:

    A: h_c <= h_b <= a <= h_a <= b <= c,  gamma <= pi/2
    B: h_c <= h_b <= h_a <= a <= b <= c,  gamma <= pi/2
    C: h_c <= h_b <= a <= h_a <= b <= c,  gamma >  pi/2
    D: h_c <= h_b <= h_a <= a <= b <= c,  gamma >  pi/2
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from .errors import NonPositiveSide, NonTriangle

__all__ = [
    "SideTriple",
    "TriangleMetrics",
    "ShapeCase",
    "BreakpointLadder",
    "INTERVAL_LABELS",
    "derive_metrics",
    "classify",
    "breakpoints",
    "placed_vertices",
]

DEGENERACY_TOL = 1e-12
TIE_TOL = 1e-12

INTERVAL_LABELS = ("I", "II", "III", "IV", "V", "VI")


@dataclass(frozen=True)
class SideTriple:
    s1: float
    s2: float
    s3: float

    def __post_init__(self) -> None:
        for s in (self.s1, self.s2, self.s3):
            if not math.isfinite(s) or s <= 0.0:
                raise NonPositiveSide(f"side lengths must be positive and finite, got {s!r}")
        a, b, c = sorted((self.s1, self.s2, self.s3))
        if a + b - c <= DEGENERACY_TOL * c:
            raise NonTriangle(
                f"not a triangle: {a:g} + {b:g} <= {c:g} (triangle inequality violated)"
            )

    @classmethod
    def parse(cls, sides: Iterable[float]) -> "SideTriple":
        vals = [float(s) for s in sides]
        if len(vals) != 3:
            raise ValueError(f"expected three side lengths, got {len(vals)}")
        return cls(*vals)


@dataclass(frozen=True)
class TriangleMetrics:
    """Ordered sides, opposite angles (radians), altitudes, area and perimeter."""

    a: float
    b: float
    c: float
    alpha: float
    beta: float
    gamma_ang: float
    h_a: float
    h_b: float
    h_c: float
    S: float
    L: float

    def scaled(self, lam: float) -> "TriangleMetrics":
        return derive_metrics(SideTriple(lam * self.a, lam * self.b, lam * self.c))


class ShapeCase(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"

    @property
    def obtuse(self) -> bool:
        return self in (ShapeCase.C, ShapeCase.D)

    @property
    def short_side_below_height(self) -> bool:
        """True for the cases where ``a <= h_a``."""
        return self in (ShapeCase.A, ShapeCase.C)


@dataclass(frozen=True)
class BreakpointLadder:
    points: tuple[float, ...]
    labels: tuple[str, ...] = INTERVAL_LABELS

    def interval_index(self, r: float) -> int:
        """Index of the half-open gap ``[x_i, x_{i+1})`` containing ``r``.

        Zero-width gaps are never returned.  Radii at or beyond ``c`` map to 6.
        """
        pts = self.points
        if r >= pts[-1]:
            return 6
        # bisect over the interior points so ties select the right-most gap
        i = 0
        for k in range(1, 6):
            if r >= pts[k]:
                i = k
        return i

    def gaps(self) -> list[tuple[float, float]]:
        return list(zip(self.points[:-1], self.points[1:]))


def _kahan_area(a: float, b: float, c: float) -> float:
    # numerically stable Heron; requires a <= b <= c
    x, y, z = c, b, a
    return 0.25 * math.sqrt((x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z)))


def derive_metrics(sides: SideTriple | Iterable[float]) -> TriangleMetrics:
    if not isinstance(sides, SideTriple):
        sides = SideTriple.parse(sides)
    a, b, c = sorted((sides.s1, sides.s2, sides.s3))
    S = _kahan_area(a, b, c)
    four_s = 4.0 * S
    alpha = math.atan2(four_s, b * b + c * c - a * a)
    beta = math.atan2(four_s, a * a + c * c - b * b)
    gamma_ang = math.atan2(four_s, a * a + b * b - c * c)
    return TriangleMetrics(
        a=a,
        b=b,
        c=c,
        alpha=alpha,
        beta=beta,
        gamma_ang=gamma_ang,
        h_a=2.0 * S / a,
        h_b=2.0 * S / b,
        h_c=2.0 * S / c,
        S=S,
        L=a + b + c,
    )


def classify(m: TriangleMetrics) -> ShapeCase:
    """Shape case of a triangle; ties go to the acute and the ``a <= h_a`` branch."""
    obtuse = m.gamma_ang - 0.5 * math.pi > TIE_TOL * math.pi
    low = m.h_a - m.a >= -TIE_TOL * m.a
    if obtuse:
        return ShapeCase.C if low else ShapeCase.D
    return ShapeCase.A if low else ShapeCase.B


def breakpoints(m: TriangleMetrics, case: ShapeCase | None = None) -> BreakpointLadder:
    if case is None:
        case = classify(m)
    if case.short_side_below_height:
        pts = [0.0, m.h_c, m.h_b, m.a, m.h_a, m.b, m.c]
    else:
        pts = [0.0, m.h_c, m.h_b, m.h_a, m.a, m.b, m.c]
    # tie conventions may leave neighbours out of order by ~1e-12 relative
    for k in range(1, 7):
        pts[k] = max(pts[k], pts[k - 1])
    return BreakpointLadder(points=tuple(pts))


def placed_vertices(m: TriangleMetrics) -> np.ndarray:
    """Counter-clockwise vertices ``[C, B, A]``: C at the origin, B on the x axis."""
    return np.array(
        [
            [0.0, 0.0],
            [m.a, 0.0],
            [m.b * math.cos(m.gamma_ang), m.b * math.sin(m.gamma_ang)],
        ]
    )
