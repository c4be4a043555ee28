"""Closed-form evaluation of the triangle correlation function.

The second derivative on every radial interval is a constant plus a few
``omega2(h / r)`` terms, one per altitude ``h`` the radius has passed.  The
first derivative and the function itself follow by exact antidifferentiation
(``omega2 -> omega1 -> omega_cap``), with integration constants fixed by
continuity, starting from ``gamma(c) = gamma'(c) = 0`` and moving inward one
breakpoint at a time.

Two evaluation paths are available.  ``"tower"`` evaluates the antiderivative
differences literally.  ``"taylor"`` (the default) expands each interval about
its right end, ``gamma(p) + gamma'(p) dr + gamma''(p) dr^2 / 2`` plus the
integrated remainders of the ``omega2`` terms.  Near ``r = c`` the function is
tiny and the literal differences cancel badly; the remainders do not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import DomainError, SingularPoint
from .geometry import (
    INTERVAL_LABELS,
    BreakpointLadder,
    ShapeCase,
    TriangleMetrics,
    breakpoints,
    classify,
)
from .omega import (
    AngularConstants,
    angular_constants,
    omega1,
    omega1_diff,
    omega2,
    omega2_prime,
    omega_cap_diff,
    omega1_remainder,
    omega_cap_remainder,
    curvature_sum,
)

__all__ = [
    "Term",
    "IntervalFormula",
    "INTERVAL_TABLES",
    "BoundaryConstants",
    "CFValue",
    "CorrelationFunction",
    "chain_constants",
    "second_derivative",
    "first_derivative",
    "correlation",
    "third_derivative",
    "eval_profile",
    "SINGULAR_TOL",
    "METHODS",
]

SINGULAR_TOL = 1e-12
METHODS = ("taylor", "tower")


@dataclass(frozen=True)
class Term:
    """``multiplicity * c(pair) * omega2(height / r)``."""

    height: str  # "h_a" | "h_b" | "h_c"
    pair: str  # "c_ab" | "c_ag" | "c_bg"
    multiplicity: int = 1


@dataclass(frozen=True)
class IntervalFormula:
    """Second derivative on one interval: ``(sum of terms + constant) / (k pi S)``."""

    label: str
    terms: tuple[Term, ...]
    constant: str  # "A_const" | "B_const" | "C_const"
    denom: int  # 2 or 4


_HC = Term("h_c", "c_ab")
_HB = Term("h_b", "c_ag")
_HA = Term("h_a", "c_bg")
_HA2 = Term("h_a", "c_bg", 2)

_I = IntervalFormula("I", (), "A_const", 2)
_II = IntervalFormula("II", (_HC,), "A_const", 2)
_III_A = IntervalFormula("III", (_HC, _HB), "A_const", 2)
_IV_A = IntervalFormula("IV", (_HC, _HB), "C_const", 4)
_V_A = IntervalFormula("V", (_HC, _HA2, _HB), "C_const", 4)
_IV_B = IntervalFormula("IV", (_HC, _HA, _HB), "A_const", 2)
_VI = IntervalFormula("VI", (_HB, _HA), "B_const", 4)


def _relabel(f: IntervalFormula, label: str) -> IntervalFormula:
    return IntervalFormula(label, f.terms, f.constant, f.denom)


INTERVAL_TABLES: dict[ShapeCase, tuple[IntervalFormula, ...]] = {
    ShapeCase.A: (_I, _II, _III_A, _IV_A, _V_A, _VI),
    ShapeCase.B: (_I, _II, _III_A, _IV_B, _V_A, _VI),
    # obtuse cases: the h_b term only switches on at r = a, h_a at r = b
    ShapeCase.C: (_I, _II, _relabel(_II, "III"), _IV_A, _relabel(_IV_A, "V"), _VI),
    ShapeCase.D: (_I, _II, _relabel(_II, "III"), _relabel(_II, "IV"), _relabel(_IV_A, "V"), _VI),
}


@dataclass(frozen=True)
class BoundaryConstants:
    """Values of ``gamma''``, ``gamma'`` and ``gamma`` at the right end of each
    interval, the curvature taken as the limit from inside the interval."""

    d1_right: tuple[float, ...]
    gamma_right: tuple[float, ...]
    d2_right: tuple[float, ...] = ()


@dataclass(frozen=True)
class CFValue:
    r: float
    gamma: float
    d1: float
    d2: float
    d3: Optional[float]  # None where the third derivative is singular


@dataclass(frozen=True, eq=False)
class CorrelationFunction:
    """Closed-form correlation function of one triangle.

    Build with :meth:`from_metrics`; the boundary constants are computed once
    and every later evaluation is a pure read.
    """

    metrics: TriangleMetrics
    case: ShapeCase
    ladder: BreakpointLadder
    angular: AngularConstants
    formulas: tuple[IntervalFormula, ...]
    constants: BoundaryConstants
    method: str = "taylor"

    @classmethod
    def from_metrics(
        cls, m: TriangleMetrics, case: ShapeCase | None = None, method: str = "taylor"
    ) -> "CorrelationFunction":
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
        return _build(m, case if case is not None else classify(m), method)

    # -- per-interval closed forms -------------------------------------------

    def _parts(self, f: IntervalFormula):
        m, k = self.metrics, self.angular
        scale = 1.0 / (f.denom * math.pi * m.S)
        terms = [
            (getattr(m, t.height), t.multiplicity * getattr(k, t.pair)) for t in f.terms
        ]
        return terms, getattr(k, f.constant), scale

    def _d2(self, i: int, r: float) -> float:
        terms, const, scale = self._parts(self.formulas[i])
        return scale * (const + sum(w * omega2(h / r) for h, w in terms))

    def _d2_right(self, i: int) -> float:
        return self.constants.d2_right[i]

    def _d1(self, i: int, r: float, d1_right: float | None = None) -> float:
        p = self.ladder.points[i + 1]
        if d1_right is None:
            d1_right = self.constants.d1_right[i]
        terms, const, scale = self._parts(self.formulas[i])
        dr = r - p
        if self.method == "tower":
            body = const * dr + sum(w * omega1_diff(h, r, p) for h, w in terms)
        else:
            d2p = self._d2_right(i)
            body = d2p * dr + sum(w * omega1_remainder(h, r, p) for h, w in terms)
        return d1_right + scale * body

    def _d0(self, i: int, r: float, d1_right=None, gamma_right=None) -> float:
        p = self.ladder.points[i + 1]
        if d1_right is None:
            d1_right = self.constants.d1_right[i]
            gamma_right = self.constants.gamma_right[i]
        terms, const, scale = self._parts(self.formulas[i])
        dr = r - p
        if self.method == "tower":
            body = 0.5 * const * dr * dr + sum(
                w * omega_cap_diff(h, r, p) for h, w in terms
            )
        else:
            d2p = self._d2_right(i)
            body = 0.5 * d2p * dr * dr + sum(
                w * omega_cap_remainder(h, r, p) for h, w in terms
            )
        return gamma_right + d1_right * dr + scale * body

    def _d3(self, i: int, r: float) -> float:
        terms, _, scale = self._parts(self.formulas[i])
        c = self.metrics.c
        total = 0.0
        for h, w in terms:
            if r - h <= SINGULAR_TOL * c:
                raise SingularPoint(f"third derivative diverges at r = {r!r} (height {h!r})")
            total += w * omega2_prime(h / r) * (-h / (r * r))
        return scale * total

    def interval(self, r: float) -> int:
        return self.ladder.interval_index(r)

    def limits(self, i: int, x: float) -> tuple[float, float, float]:
        """``(gamma, gamma', gamma'')`` of interval ``i``'s closed form at ``x``.

        ``x`` may sit outside the interval, provided every active height is
        below it; used to compare one-sided limits at breakpoints.
        """
        return self._d0(i, x), self._d1(i, x), self._d2(i, x)

    # -- public evaluation ---------------------------------------------------

    def second_derivative(self, r: float) -> float:
        if r <= 0.0:
            raise DomainError(f"second derivative needs r > 0, got {r!r}")
        return self._eval_d2(r)

    def _eval_d2(self, r: float) -> float:
        i = self.interval(r)
        return 0.0 if i == 6 else self._d2(i, r)

    def first_derivative(self, r: float) -> float:
        if r < 0.0:
            raise DomainError(f"radius must be non-negative, got {r!r}")
        i = self.interval(r)
        return 0.0 if i == 6 else self._d1(i, r)

    def correlation(self, r: float) -> float:
        if r < 0.0:
            raise DomainError(f"radius must be non-negative, got {r!r}")
        if r == 0.0:
            return 1.0
        i = self.interval(r)
        return 0.0 if i == 6 else self._d0(i, r)

    def third_derivative(self, r: float) -> float:
        if r <= 0.0:
            raise DomainError(f"third derivative needs r > 0, got {r!r}")
        i = self.interval(r)
        return 0.0 if i == 6 else self._d3(i, r)

    def evaluate(self, r: float) -> CFValue:
        if r < 0.0:
            raise DomainError(f"radius must be non-negative, got {r!r}")
        i = self.interval(r)
        if i == 6:
            return CFValue(r, 0.0, 0.0, 0.0, 0.0)
        try:
            d3 = self._d3(i, r) if r > 0.0 else 0.0
        except SingularPoint:
            d3 = None
        gamma = 1.0 if r == 0.0 else self._d0(i, r)
        return CFValue(r, gamma, self._d1(i, r), self._d2(i, r), d3)

    def profile(self, grid: Iterable[float]) -> list[CFValue]:
        return [self.evaluate(float(r)) for r in grid]

    @property
    def singular_heights(self) -> tuple[float, ...]:
        """Altitudes where the third derivative blows up like ``(r - h)^-1/2``.

        A term introduces a singularity only if it switches on at its own
        height, i.e. the altitude's foot lies on the opposite side.
        """
        pts = self.ladder.points
        tol = 1e-9 * self.metrics.c
        out = []
        prev: set[str] = set()
        for i in range(6):
            if pts[i + 1] <= pts[i]:
                continue
            for t in self.formulas[i].terms:
                h = getattr(self.metrics, t.height)
                if t.height not in prev and abs(h - pts[i]) <= tol:
                    out.append(h)
            prev = {t.height for t in self.formulas[i].terms}
        return tuple(sorted(set(out)))


def _build(m: TriangleMetrics, case: ShapeCase, method: str = "taylor") -> CorrelationFunction:
    ladder = breakpoints(m, case)
    cf = CorrelationFunction(
        metrics=m,
        case=case,
        ladder=ladder,
        angular=angular_constants(m),
        formulas=INTERVAL_TABLES[case],
        constants=BoundaryConstants((), ()),
        method=method,
    )
    pts = ladder.points
    # gamma'' vanishes identically at c from the left; elsewhere the
    # right-end curvature is a cancelling sum, evaluated in extended precision
    d2 = [0.0] * 6
    for i, f in enumerate(cf.formulas[:5]):
        terms = [(t.height, t.pair, t.multiplicity) for t in f.terms]
        d2[i] = curvature_sum(m, f.constant, terms, pts[i + 1])
    object.__setattr__(cf, "constants", BoundaryConstants((), (), tuple(d2)))
    d1 = [0.0] * 6
    g0 = [0.0] * 6
    for i in range(5, 0, -1):
        left = pts[i]
        if left == pts[i + 1]:
            d1[i - 1], g0[i - 1] = d1[i], g0[i]
            continue
        d1[i - 1] = cf._d1(i, left, d1[i])
        g0[i - 1] = cf._d0(i, left, d1[i], g0[i])
    object.__setattr__(cf, "constants", BoundaryConstants(tuple(d1), tuple(g0), tuple(d2)))
    return cf


@lru_cache(maxsize=256)
def _cached(m: TriangleMetrics, case: ShapeCase) -> CorrelationFunction:
    return _build(m, case)


def _cf(m: TriangleMetrics, case: ShapeCase | None) -> CorrelationFunction:
    return _cached(m, case if case is not None else classify(m))


def chain_constants(m: TriangleMetrics, case: ShapeCase | None = None) -> BoundaryConstants:
    return _cf(m, case).constants


def second_derivative(m: TriangleMetrics, case: ShapeCase | None, r: float) -> float:
    return _cf(m, case).second_derivative(r)


def first_derivative(m: TriangleMetrics, case: ShapeCase | None, r: float) -> float:
    return _cf(m, case).first_derivative(r)


def correlation(m: TriangleMetrics, case: ShapeCase | None, r: float) -> float:
    return _cf(m, case).correlation(r)


def third_derivative(m: TriangleMetrics, case: ShapeCase | None, r: float) -> float:
    return _cf(m, case).third_derivative(r)


def eval_profile(m: TriangleMetrics, grid: Sequence[float]) -> list[CFValue]:
    for r in grid:
        if r < 0.0:
            raise DomainError(f"grid radii must be non-negative, got {r!r}")
    return _cf(m, None).profile(grid)
