"""Formula-free reference values of the isotropic correlation function.

The correlation function at radius ``r`` is the overlap area of the triangle
with a copy translated by ``r`` along direction ``phi``, averaged over
``phi`` and divided by the area.  Overlaps come from exact convex clipping;
the angular average uses adaptive Gauss-Kronrod panels whose edges sit on the
directions where a vertex of one copy crosses an edge of the other, i.e.
where the overlap polygon changes combinatorial type.

Nothing here uses the closed-form machinery in :mod:`trianglecf.omega` or
:mod:`trianglecf.cf_eval`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import TriangleMetrics, breakpoints, placed_vertices
from .quadrature import adaptive_gk15

__all__ = [
    "PlacedTriangle",
    "clip_convex",
    "polygon_area",
    "intersection_area",
    "intersection_areas",
    "kink_angles",
    "gamma_oracle",
    "fd_derivatives",
    "area_integral_check",
]


@dataclass(frozen=True, eq=False)
class PlacedTriangle:
    vertices: np.ndarray  # (3, 2), counter-clockwise

    @classmethod
    def from_metrics(cls, m: TriangleMetrics) -> "PlacedTriangle":
        return cls(placed_vertices(m))

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=float).reshape(3, 2)
        if _signed_area(v) < 0.0:
            v = v[::-1].copy()
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def area(self) -> float:
        return _signed_area(self.vertices)

    @property
    def diameter(self) -> float:
        v = self.vertices
        return max(math.dist(v[i], v[j]) for i, j in ((0, 1), (1, 2), (2, 0)))

    def moved(self, angle: float, shift=(0.0, 0.0)) -> "PlacedTriangle":
        cs, sn = math.cos(angle), math.sin(angle)
        rot = np.array([[cs, -sn], [sn, cs]])
        return PlacedTriangle(self.vertices @ rot.T + np.asarray(shift, dtype=float))


def _signed_area(v) -> float:
    x, y = np.asarray(v, dtype=float).T
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def polygon_area(poly) -> float:
    if len(poly) < 3:
        return 0.0
    return abs(_signed_area(poly))


def clip_convex(subject, clip, eps: float = 0.0) -> list[tuple[float, float]]:
    """Sutherland-Hodgman clipping of ``subject`` by the convex CCW polygon ``clip``."""
    output = [tuple(map(float, p)) for p in subject]
    clip = [tuple(map(float, p)) for p in clip]
    cp1 = clip[-1]
    for cp2 in clip:
        if not output:
            break
        ex, ey = cp2[0] - cp1[0], cp2[1] - cp1[1]

        def side(p, cp1=cp1, ex=ex, ey=ey):
            return ex * (p[1] - cp1[1]) - ey * (p[0] - cp1[0])

        inputs, output = output, []
        s = inputs[-1]
        ds = side(s)
        for e in inputs:
            de = side(e)
            if de >= -eps:
                if ds < -eps:
                    t = ds / (ds - de)
                    output.append((s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])))
                output.append(e)
            elif ds >= -eps:
                t = ds / (ds - de)
                output.append((s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])))
            s, ds = e, de
        cp1 = cp2
    return output


def intersection_area(t: PlacedTriangle, displacement) -> float:
    """Area of ``t`` intersected with ``t`` translated by ``displacement``."""
    d = np.asarray(displacement, dtype=float)
    v = t.vertices
    if np.hypot(*d) >= t.diameter:
        return 0.0
    # on-edge classification at 1e-12 of the diameter; side() returns length^2
    eps = 1e-12 * t.diameter**2
    return polygon_area(clip_convex(v + d, v, eps=eps))


def _edge_windows(v: np.ndarray, d: np.ndarray):
    """Parameter windows ``[t0, t1]`` of each edge of ``v`` lying inside ``v + d``.

    Cyrus-Beck clipping against the three half-planes of the shifted copy,
    vectorised over the (N, 2) displacements ``d``.
    """
    n = d.shape[0]
    edges = np.roll(v, -1, axis=0) - v
    out = []
    for k in range(3):
        p, e = v[k], edges[k]
        t0 = np.zeros(n)
        t1 = np.ones(n)
        for j in range(3):
            ej = edges[j]
            rel = p - v[j] - d
            n0 = ej[0] * rel[:, 1] - ej[1] * rel[:, 0]
            if j == k:
                # the parallel copy of this edge: keep only strictly inside
                t1 = np.where(n0 > 0.0, t1, -1.0)
                continue
            n1 = ej[0] * e[1] - ej[1] * e[0]
            lim = -n0 / n1
            if n1 > 0.0:
                t0 = np.maximum(t0, lim)
            else:
                t1 = np.minimum(t1, lim)
        out.append((p, e, t0, t1))
    return out


def _green_sum(v: np.ndarray, d_clip: np.ndarray, shift: np.ndarray) -> np.ndarray:
    total = np.zeros(d_clip.shape[0])
    for p, e, t0, t1 in _edge_windows(v, d_clip):
        x0 = p[0] + t0 * e[0] + shift[:, 0]
        y0 = p[1] + t0 * e[1] + shift[:, 1]
        x1 = p[0] + t1 * e[0] + shift[:, 0]
        y1 = p[1] + t1 * e[1] + shift[:, 1]
        total += np.where(t1 > t0, x0 * y1 - x1 * y0, 0.0)
    return total


def intersection_areas(t: PlacedTriangle, displacements) -> np.ndarray:
    """Vectorised overlap areas for an (N, 2) array of displacements.

    The overlap boundary consists of the parts of each copy's boundary lying
    inside the other, so Green's theorem over the clipped edges gives its area.
    """
    d = np.atleast_2d(np.asarray(displacements, dtype=float))
    v = t.vertices
    own = _green_sum(v, d, np.zeros_like(d))
    # edges of v + d inside v are the edges of v inside v - d, moved by d
    other = _green_sum(v, -d, d)
    area = np.maximum(0.5 * (own + other), 0.0)
    # coincident copies leave every edge on the boundary of the other
    return np.where(np.all(d == 0.0, axis=1), t.area, area)


def kink_angles(t: PlacedTriangle, r: float) -> np.ndarray:
    """Directions in [0, pi] where the overlap polygon changes structure.

    A vertex of the shifted copy lies on an edge of the fixed one when the
    displacement lies on a segment ``[P - V, Q - V]`` (or its negation);
    intersecting those segments with the circle of radius ``r`` gives the
    candidate angles.
    """
    v = t.vertices
    out = [0.0, math.pi]
    for i in range(3):
        for k in range(3):
            p = v[k] - v[i]
            q = v[(k + 1) % 3] - v[i]
            e = q - p
            aa = float(e @ e)
            bb = 2.0 * float(p @ e)
            cc = float(p @ p) - r * r
            disc = bb * bb - 4.0 * aa * cc
            if disc < 0.0:
                continue
            sq = math.sqrt(disc)
            for s in ((-bb - sq) / (2.0 * aa), (-bb + sq) / (2.0 * aa)):
                if -1e-14 <= s <= 1.0 + 1e-14:
                    x = p + s * e
                    out.append(math.atan2(x[1], x[0]) % math.pi)
    return np.unique(np.array(out))


def gamma_oracle(
    t: PlacedTriangle | TriangleMetrics, r: float, tol: float = 1e-9
) -> float:
    """Isotropic correlation function by angular quadrature of overlap areas."""
    if isinstance(t, TriangleMetrics):
        t = PlacedTriangle.from_metrics(t)
    if r < 0.0:
        raise ValueError(f"radius must be non-negative, got {r!r}")
    if r == 0.0:
        return 1.0
    if r >= t.diameter:
        return 0.0
    S = t.area

    def integrand(phi: np.ndarray) -> np.ndarray:
        d = r * np.column_stack([np.cos(phi), np.sin(phi)])
        return intersection_areas(t, d)

    # absolute tolerance on gamma -> on the raw angular integral
    val, _ = adaptive_gk15(integrand, kink_angles(t, r), tol * math.pi * S)
    return min(max(val / (math.pi * S), 0.0), 1.0)


def fd_derivatives(
    t: PlacedTriangle | TriangleMetrics,
    r: float,
    step: float | None = None,
    tol: float = 1e-13,
) -> tuple[float, float]:
    """Central-difference estimates of the first and second derivative at ``r``."""
    if isinstance(t, TriangleMetrics):
        t = PlacedTriangle.from_metrics(t)
    if step is None:
        step = 1e-4 * t.diameter
    g = [gamma_oracle(t, r + k * step, tol) for k in (-1, 0, 1)]
    d1 = (g[2] - g[0]) / (2.0 * step)
    d2 = (g[2] - 2.0 * g[1] + g[0]) / (step * step)
    return d1, d2


def area_integral_check(m: TriangleMetrics, tol: float = 1e-9) -> float:
    """``integral_0^c 2 pi r gamma(r) dr`` from oracle values; equals the area."""
    t = PlacedTriangle.from_metrics(m)
    ladder = breakpoints(m).points

    def integrand(rs: np.ndarray) -> np.ndarray:
        return np.array([2.0 * math.pi * r * gamma_oracle(t, r, 1e-12) for r in rs])

    val, _ = adaptive_gk15(integrand, ladder, tol * m.S)
    return val
