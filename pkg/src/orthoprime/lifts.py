"""Base lifts of the boundary components and their normalising charts.

For a geodesic boundary the chart sends its axis to (0, inf) with the
boundary element acting as z -> e^l z, and the coordinate along the axis is
log(height). For a cusp the chart sends the cusp to infinity with the
boundary element acting as z -> z + t, and the coordinate is Re z.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import hyperboloid as H
from . import words as W
from .collars import collar_width
from .hypcore import Geodesic, MoebiusMap, axis_or_fixed_point, standard_chart
from .surfaces import SurfaceModel, chart_to_infinity


@dataclass(frozen=True)
class BaseLift:
    index: int
    kind: str  # "geodesic" | "cusp"
    element: MoebiusMap
    chart: MoebiusMap
    period: float  # length l, or |t| for a cusp
    centre: float  # chart coordinate of the basepoint's projection
    fixed: tuple  # axis endpoints (start, end) or (cusp point,)

    @property
    def window(self) -> tuple[float, float]:
        return self.centre - self.period / 2.0, self.centre + self.period / 2.0

    def horo_height(self, k) -> float:
        """Chart height of the grade-k horocycle (boundary length 2/k)."""
        return k * self.period / 2.0

    def reach(self, base: complex, k) -> float:
        """Farthest distance from the basepoint to the window segment."""
        z = self.chart(base)
        if self.kind == "geodesic":
            d0 = math.asinh(abs(z.real) / z.imag)
            return math.acosh(math.cosh(d0) * math.cosh(self.period / 2.0))
        h = self.horo_height(k)
        x = ((self.period / 2.0) ** 2 + (z.imag - h) ** 2) / (2.0 * z.imag * h)
        return math.acosh(1.0 + x)


def base_lift(s: SurfaceModel, i: int) -> BaseLift:
    return _base_lifts(s)[i]


def base_lifts(s: SurfaceModel) -> tuple[BaseLift, ...]:
    return _base_lifts(s)


@lru_cache(maxsize=64)
def _base_lifts(s: SurfaceModel) -> tuple[BaseLift, ...]:
    out = []
    for i, b in enumerate(s.boundaries):
        g = s.eval_word(b.word)
        if b.shape.kind == "geodesic":
            ax = axis_or_fixed_point(g)
            M = standard_chart(ax).m
            z = M(s.basepoint)
            out.append(BaseLift(i, "geodesic", g, M, b.shape.value, math.log(abs(z)), (ax.start, ax.end)))
        else:
            p = axis_or_fixed_point(g)
            M = chart_to_infinity(p)
            N = M @ g @ M.inverse()
            t = abs(N.b / N.a)
            out.append(BaseLift(i, "cusp", g, M, t, M(s.basepoint).real, (p,)))
    return tuple(out)


@dataclass(frozen=True)
class LocalLifts:
    """Boundary lifts near the fundamental domain, as numpy arrays.

    ``normals`` are the axis normals of geodesic lifts; ``horo`` are grade-1
    horoball vectors of cusp lifts (grade k scales them by k).
    """

    geo_boundary: np.ndarray
    normals: np.ndarray
    geo_mats: np.ndarray
    cusp_boundary: np.ndarray
    horo: np.ndarray
    cusp_mats: np.ndarray
    geo_words: tuple = ()  # conjugators u with the lift equal to u B u^-1
    cusp_words: tuple = ()


def _fixed_key(m: MoebiusMap, kind: str):
    f = axis_or_fixed_point(m)
    pts = (f.start, f.end) if isinstance(f, Geodesic) else (f,)
    return tuple(round(x, 9) if not math.isinf(x) else math.inf for x in pts)


@lru_cache(maxsize=64)
def local_lifts(s: SurfaceModel, depth: int = 2) -> LocalLifts:
    geo_b, normals, geo_m, geo_w = [], [], [], []
    cusp_b, horo, cusp_m, cusp_w = [], [], [], []
    seen = set()
    for i, b in enumerate(s.boundaries):
        for u in W.reduced_words(s.rank, depth):
            m = s.eval_word(W.mul(u, b.word, W.inverse(u)))
            key = (i, _fixed_key(m, b.shape.kind))
            if key in seen:
                continue
            seen.add(key)
            f = axis_or_fixed_point(m)
            if b.shape.kind == "geodesic":
                geo_b.append(i)
                normals.append(H.geodesic_normal(f.start, f.end))
                geo_m.append(m.as_tuple())
                geo_w.append(u)
            else:
                cusp_b.append(i)
                horo.append(grade_one_horoball(m, f))
                cusp_m.append(m.as_tuple())
                cusp_w.append(u)
    arr = lambda x, w: np.array(x, dtype=float).reshape(-1, w)
    return LocalLifts(
        np.array(geo_b, dtype=int), arr(normals, 3), arr(geo_m, 4),
        np.array(cusp_b, dtype=int), arr(horo, 3), arr(cusp_m, 4),
        tuple(geo_w), tuple(cusp_w),
    )


def grade_one_horoball(parabolic: MoebiusMap, fixed: float) -> np.ndarray:
    """Horoball vector of the cusp neighbourhood with boundary length 2."""
    a, b, c, d = parabolic.as_tuple()
    if math.isinf(fixed):
        return H.horoball_vector(fixed, abs(b / a) / 2.0)
    return H.horoball_vector(fixed, 2.0 / abs(c))


def collar_threshold(shape, k) -> float:
    """cosh of the grade-k collar width (geodesic boundaries only)."""
    return math.cosh(collar_width(shape, k))
