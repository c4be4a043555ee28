"""Invariant suite shared by the ``check`` subcommand and the tests."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .cf_eval import CorrelationFunction
from .errors import SingularPoint
from .formfactor import normalization_integral
from .geometry import SideTriple, TriangleMetrics, derive_metrics
from .oracle import PlacedTriangle, area_integral_check, gamma_oracle

__all__ = [
    "Tolerances",
    "CheckRow",
    "CheckReport",
    "random_triangles",
    "shape_triangles",
    "interior_breakpoints",
    "forward_chain",
    "continuity_defects",
    "spike_exponent",
    "expected_spike_heights",
    "run_checks",
]

CONTINUITY_FLOOR = 1e-4

SHAPE_SIDES = {
    "A": (1.0, 1.5, 1.611),
    "B": (1.0, 1.06, 1.127),
    "C": (1.0, 1.5, 2.239),
    "D": (1.0, 1.5, 2.470),
}


def shape_triangles() -> dict[str, TriangleMetrics]:
    return {k: derive_metrics(v) for k, v in SHAPE_SIDES.items()}


@dataclass(frozen=True)
class Tolerances:
    oracle: float = 1e-7
    continuity: float = 1e-9
    normalization: float = 1e-6
    identity: float = 1e-9
    exponent: float = 0.05
    # fit window for the spike exponent, in units of c above the height
    spike_window: tuple[float, float] = (1e-9, 1e-6)
    oracle_points: int = 200


@dataclass
class CheckRow:
    name: str
    defect: float
    tolerance: float
    passed: bool


@dataclass
class CheckReport:
    sides: tuple[float, float, float]
    case: str
    rows: list[CheckRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def add(self, name: str, defect: float, tol: float) -> None:
        defect = float(defect)
        self.rows.append(CheckRow(name, defect, tol, bool(defect <= tol)))

    def to_dict(self) -> dict:
        return {
            "sides": list(self.sides),
            "case": self.case,
            "status": "pass" if self.passed else "fail",
            "rows": [asdict(r) for r in self.rows],
        }


def random_triangles(n: int, seed: int) -> list[TriangleMetrics]:
    """Seeded random triangles with sides uniform on [0.1, 10].

    Roughly one in ten is forced to be near-right or near-isoceles so that the
    tie conventions get exercised.
    """
    rng = np.random.default_rng(seed)
    out: list[TriangleMetrics] = []
    while len(out) < n:
        s = rng.uniform(0.1, 10.0, size=3)
        if rng.random() < 0.1:
            s.sort()
            kind = rng.integers(3)
            jitter = 1.0 + rng.uniform(-1e-13, 1e-13)
            if kind == 0:
                s[2] = math.hypot(s[0], s[1]) * jitter
            elif kind == 1:
                s[1] = s[0] * jitter
            else:
                s[1] = s[2] * jitter
        try:
            out.append(derive_metrics(SideTriple(*map(float, s))))
        except ValueError:
            continue
    return out


def interior_breakpoints(cf: CorrelationFunction) -> list[tuple[float, int, int]]:
    """``(x, left, right)`` for each distinct interior breakpoint.

    ``left``/``right`` are the nearest intervals of non-zero width on each side.
    """
    pts = cf.ladder.points
    live = [i for i in range(6) if pts[i + 1] > pts[i]]
    return [(pts[r], l, r) for l, r in zip(live[:-1], live[1:])]


def forward_chain(cf: CorrelationFunction) -> list[tuple[float, float, float]]:
    """``(p, gamma, gamma')`` at each interval's right end, chained outward.

    Starts from ``gamma(0) = 1`` and ``gamma'(0) = -L / (pi S)`` instead of the
    anchor at ``c`` used by the evaluator, so agreement with the stored
    constants checks that the interval forms really join up.
    """
    m = cf.metrics
    g, d1 = 1.0, -m.L / (math.pi * m.S)
    pts = cf.ladder.points
    out = []
    for i in range(6):
        if pts[i + 1] > pts[i]:
            # solve for the right-end values that reproduce (g, d1) at the left end
            left = pts[i]
            d1_right = d1 - cf._d1(i, left, 0.0)
            g_right = g - cf._d0(i, left, d1_right, 0.0)
            g, d1 = g_right, d1_right
        out.append((pts[i + 1], g, d1))
    return out


def continuity_defects(cf: CorrelationFunction) -> tuple[float, float, float]:
    """Worst mismatch of ``gamma``, ``gamma'`` and ``gamma''`` across breakpoints.

    ``gamma`` and ``gamma'`` compare the outward chain from the origin with
    the inward chain from ``c``, relative to the larger value but never to
    less than ``CONTINUITY_FLOOR`` times the value at the origin: near ``c``
    gamma vanishes like ``(c - r)^3`` while the outward chain carries
    round-off from ``gamma(0) = 1``.  ``gamma''`` compares one-sided closed
    forms at heights.
    """
    m, k = cf.metrics, cf.angular
    slope0 = m.L / (math.pi * m.S)
    d0 = d1 = 0.0
    for i, (p, g, g1) in enumerate(forward_chain(cf)):
        gb = cf.constants.gamma_right[i] if i < 5 else 0.0
        g1b = cf.constants.d1_right[i] if i < 5 else 0.0
        d0 = max(d0, abs(g - gb) / max(abs(g), abs(gb), CONTINUITY_FLOOR))
        d1 = max(d1, abs(g1 - g1b) / max(abs(g1), abs(g1b), CONTINUITY_FLOOR * slope0))
    d2 = 0.0
    for x, left, right in interior_breakpoints(cf):
        if not _is_side(m, x):
            # measured against the curvature scale, since gamma'' may cross zero
            g2l, g2r = cf._d2(left, x), cf._d2(right, x)
            d2 = max(d2, abs(g2l - g2r) / max(abs(g2l), abs(g2r), k.A_const / (2 * math.pi * m.S)))
    return d0, d1, d2


def _is_side(m: TriangleMetrics, x: float) -> bool:
    return any(abs(x - s) <= 1e-12 * m.c for s in (m.a, m.b, m.c))


def expected_spike_heights(m: TriangleMetrics) -> set[float]:
    """Altitudes whose foot lies on the opposite side (closed segment).

    Decided from the angles alone: the foot of the altitude onto a side is on
    that side iff both angles adjacent to the side are at most a right angle.
    """
    half = 0.5 * math.pi * (1.0 + 1e-12)
    out = set()
    if m.beta <= half and m.gamma_ang <= half:
        out.add(m.h_a)
    if m.alpha <= half and m.gamma_ang <= half:
        out.add(m.h_b)
    out.add(m.h_c)
    return out


def spike_exponent(cf: CorrelationFunction, h: float, lo: float = 1e-6, hi: float = 1e-3) -> float | None:
    """Log-log slope of |gamma'''| against ``r - h`` for ``r - h`` in [lo, hi]*c.

    Returns None if the window leaves the interval that starts at ``h``.
    """
    c = cf.metrics.c
    u = np.geomspace(lo, hi, 25) * c
    i = cf.interval(h + u[0])
    if cf.interval(h + u[-1]) != i:
        return None
    y = []
    for du in u:
        try:
            y.append(abs(cf.third_derivative(h + du)))
        except SingularPoint:
            return None
    y = np.asarray(y)
    if np.any(y == 0.0):
        return 0.0
    return float(np.polyfit(np.log(u), np.log(y), 1)[0])


def _rel(x: float, y: float) -> float:
    scale = max(abs(x), abs(y))
    return 0.0 if scale == 0.0 else abs(x - y) / scale


def run_checks(m: TriangleMetrics, tol: Tolerances = Tolerances(), oracle: bool = True) -> CheckReport:
    cf = CorrelationFunction.from_metrics(m)
    k = cf.angular
    rep = CheckReport((m.a, m.b, m.c), cf.case.value)

    # boundary identities at the origin
    v0 = cf.evaluate(0.0)
    rep.add("gamma(0) = 1", abs(v0.gamma - 1.0), 0.0)
    rep.add("gamma'(0) = -L/(pi S)", _rel(v0.d1, -m.L / (math.pi * m.S)), tol.identity)
    rep.add("gamma''(0+) = A/(2 pi S)", _rel(v0.d2, k.A_const / (2 * math.pi * m.S)), tol.identity)
    third = [cf.third_derivative(m.h_c * f) for f in (0.1, 0.5, 0.9)] if m.h_c > 0 else []
    rep.add("gamma''' = 0 on (0, h_c)", max(map(abs, third), default=0.0), 0.0)
    rep.add("gamma(c) = gamma'(c) = 0", max(abs(cf.correlation(m.c)), abs(cf.first_derivative(m.c))), 0.0)

    # continuity: outward chain from the origin against the inward one
    d0, d1, d2 = continuity_defects(cf)
    rep.add("continuity gamma", d0, tol.continuity)
    rep.add("continuity gamma'", d1, tol.continuity)
    rep.add("continuity gamma'' at heights", d2, tol.continuity)

    grid = np.linspace(0.0, m.c, tol.oracle_points)
    prof = cf.profile(grid)
    rep.add("gamma' <= 0", max(0.0, max(p.d1 for p in prof)), 0.0)
    rep.add("0 <= gamma <= 1", max(max(p.gamma - 1.0, -p.gamma, 0.0) for p in prof), 1e-15)

    rep.add("normalization (analytic)", _rel(normalization_integral(cf), m.S), tol.normalization)

    if oracle:
        t = PlacedTriangle.from_metrics(m)
        err = max(abs(p.gamma - gamma_oracle(t, p.r, 1e-12)) for p in prof)
        rep.add("oracle equivalence", err, tol.oracle)
        rep.add("normalization (oracle)", _rel(area_integral_check(m, 1e-9), m.S), tol.normalization)

    # spike census: set agreement plus exponent fits where the window fits
    expected = expected_spike_heights(m)
    found = set(cf.singular_heights)
    mismatch = _set_mismatch(expected, found, 1e-9 * m.c)
    rep.add("spike census (set)", mismatch, 0.0)
    worst = 0.0
    for h in sorted({m.h_a, m.h_b, m.h_c}):
        slope = spike_exponent(cf, h, *tol.spike_window)
        if slope is None:
            continue
        target = -0.5 if any(abs(h - e) <= 1e-9 * m.c for e in found) else 0.0
        worst = max(worst, abs(slope - target))
    rep.add("spike census (exponent)", worst, tol.exponent)
    return rep


def _set_mismatch(a: set[float], b: set[float], eps: float) -> int:
    """Number of elements of either set without an eps-close partner in the other."""
    miss = sum(1 for x in a if not any(abs(x - y) <= eps for y in b))
    return miss + sum(1 for y in b if not any(abs(x - y) <= eps for x in a))
