"""Upper half-plane primitives: Moebius maps, geodesics, horocycles.

Ideal points are real floats, with ``math.inf`` standing for the point at
infinity. Interior points are complex numbers with positive imaginary part.
All distances come from closed forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    Asymptotic,
    EllipticInput,
    IdentityInput,
    Intersecting,
    NegativeOffset,
)

TOL = 1e-9
INF = math.inf


@dataclass(frozen=True)
class MoebiusMap:
    """A real 2x2 matrix of determinant one acting on the upper half-plane."""

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        (a, b), (c, d) = m
        return cls(float(a), float(b), float(c), float(d)).normalized()

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    def normalized(self) -> "MoebiusMap":
        det = self.det
        if det <= 0:
            raise ValueError(f"determinant must be positive, got {det}")
        s = math.sqrt(det)
        return MoebiusMap(self.a / s, self.b / s, self.c / s, self.d / s)

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def half_trace(self) -> float:
        return abs(self.a + self.d) / 2.0

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        m = MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        # products of unimodular maps are unimodular; with large entries the
        # computed det is mostly cancellation error, so leave those alone
        if max(abs(m.a * m.d), abs(m.b * m.c)) > 1e4:
            return m
        return m.normalized()

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "MoebiusMap":
        base = self if n >= 0 else self.inverse()
        result = MoebiusMap.identity()
        for _ in range(abs(n)):
            result = result @ base
        return result

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def __call__(self, z):
        """Act on an interior point (complex) or an ideal point (float/inf)."""
        if isinstance(z, complex):
            return (self.a * z + self.b) / (self.c * z + self.d)
        if z == INF or z == -INF:
            return INF if self.c == 0 else self.a / self.c
        den = self.c * z + self.d
        if den == 0:
            return INF
        return (self.a * z + self.b) / den


class Classification(NamedTuple):
    kind: str  # "hyperbolic" | "parabolic" | "elliptic"
    length: float | None = None
    angle: float | None = None


def classify_isometry(m: MoebiusMap, tol: float = TOL) -> Classification:
    t = abs(m.trace)
    if abs(t - 2.0) <= tol:
        return Classification("parabolic")
    if t > 2.0:
        return Classification("hyperbolic", length=2.0 * math.acosh(t / 2.0))
    return Classification("elliptic", angle=2.0 * math.acos(t / 2.0))


@dataclass(frozen=True)
class Geodesic:
    """Oriented geodesic from ideal point ``start`` to ideal point ``end``."""

    start: float
    end: float

    def __post_init__(self):
        if _ideal_eq(self.start, self.end):
            raise ValueError("geodesic endpoints must be distinct")

    def reversed(self) -> "Geodesic":
        return Geodesic(self.end, self.start)

    def same_set(self, other: "Geodesic", tol: float = TOL) -> bool:
        return (_ideal_eq(self.start, other.start, tol) and _ideal_eq(self.end, other.end, tol)) or (
            _ideal_eq(self.start, other.end, tol) and _ideal_eq(self.end, other.start, tol)
        )

    def image(self, m: MoebiusMap) -> "Geodesic":
        return Geodesic(m(self.start), m(self.end))


@dataclass(frozen=True)
class Horocycle:
    """Horocycle based at an ideal point.

    ``level`` is the Euclidean height when based at infinity and the
    Euclidean diameter otherwise.
    """

    base: float
    level: float

    def __post_init__(self):
        if not self.level > 0:
            raise ValueError("horocycle level must be positive")

    def length_under(self, parabolic: MoebiusMap) -> float:
        """Length of the arc between a point and its image under ``parabolic``."""
        if self.base == INF:
            return abs(parabolic.b / parabolic.a) / self.level
        # translation length after sending base to infinity is |c| / det-normalised
        return abs(parabolic.c) * self.level


def _ideal_eq(x: float, y: float, tol: float = 0.0) -> bool:
    if math.isinf(x) or math.isinf(y):
        return math.isinf(x) and math.isinf(y)
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def distance(z: complex, w: complex) -> float:
    return math.acosh(1.0 + abs(z - w) ** 2 / (2.0 * z.imag * w.imag))


def axis_or_fixed_point(m: MoebiusMap, tol: float = TOL):
    """Oriented axis (attracting endpoint second) or parabolic fixed point."""
    kind = classify_isometry(m, tol).kind
    if kind == "elliptic":
        raise EllipticInput("elliptic maps have no ideal fixed points")
    a, b, c, d = m.as_tuple()
    if kind == "parabolic":
        if abs(b) < tol and abs(c) < tol:
            raise IdentityInput("identity has no distinguished fixed point")
        if abs(c) < tol * max(1.0, abs(a), abs(b), abs(d)):
            return INF
        return (a - d) / (2.0 * c)
    if c == 0.0:
        other = b / (d - a)
        return Geodesic(other, INF) if abs(a) > abs(d) else Geodesic(INF, other)
    disc = math.sqrt((d - a) ** 2 + 4.0 * b * c)
    r1 = (a - d + disc) / (2.0 * c)
    r2 = (a - d - disc) / (2.0 * c)
    # attracting fixed point x has |cx + d| > 1
    if abs(c * r1 + d) > abs(c * r2 + d):
        return Geodesic(r2, r1)
    return Geodesic(r1, r2)


class _Chart(NamedTuple):
    """Orientation preserving isometry sending a geodesic to (0, inf)."""

    m: MoebiusMap

    def fwd(self, z):
        return self.m(z)

    def back(self, w):
        return self.m.inverse()(w)


def standard_chart(g: Geodesic) -> _Chart:
    """Isometry of the plane sending ``g.start`` to 0 and ``g.end`` to infinity."""
    p, q = g.start, g.end
    if math.isinf(q):
        return _Chart(MoebiusMap(1.0, -p, 0.0, 1.0))
    if math.isinf(p):
        return _Chart(MoebiusMap(0.0, -1.0, 1.0, -q))
    s = math.sqrt(abs(p - q))
    if p > q:
        return _Chart(MoebiusMap(1.0 / s, -p / s, 1.0 / s, -q / s))
    return _Chart(MoebiusMap(-1.0 / s, p / s, 1.0 / s, -q / s))


class Perpendicular(NamedTuple):
    length: float
    foot1: complex
    foot2: complex


def perpendicular_between(g1: Geodesic, g2: Geodesic, tol: float = TOL) -> Perpendicular:
    chart = standard_chart(g1)
    u, v = chart.fwd(g2.start), chart.fwd(g2.end)
    for x in (u, v):
        if math.isinf(x) or abs(x) <= tol:
            raise Asymptotic("geodesics share an ideal endpoint")
    if u * v < 0:
        y = math.sqrt(-u * v)
        angle = math.acos(min(1.0, abs(u + v) / abs(v - u)))
        raise Intersecting(chart.back(complex(0.0, y)), angle)
    u, v = sorted((abs(u), abs(v)))
    sign = 1.0 if chart.fwd(g2.start) > 0 else -1.0
    r = math.sqrt(u * v)
    length = math.acosh((v + u) / (v - u))
    m, rho = (u + v) / 2.0, (v - u) / 2.0
    x2 = (r * r + m * m - rho * rho) / (2.0 * m)
    y2 = math.sqrt(max(r * r - x2 * x2, 0.0))
    foot1 = chart.back(complex(0.0, r))
    foot2 = chart.back(complex(sign * x2, y2))
    return Perpendicular(length, foot1, foot2)


def offset_curve_length(shape: str, param: float, w: float) -> float:
    """Length of the curve at distance ``w`` from a boundary object.

    ``shape`` is ``"geodesic"`` (param = length), ``"cone"`` (param = angle)
    or ``"cusp"`` (param = reference horocycle length; ``w`` measured into
    the cusp).
    """
    if w < 0:
        raise NegativeOffset(f"offset must be non-negative, got {w}")
    if shape == "geodesic":
        return param * math.cosh(w)
    if shape == "cone":
        return param * math.sinh(w)
    if shape == "cusp":
        return param * math.exp(-w)
    raise ValueError(f"unknown shape {shape!r}")


__all__ = [
    "TOL",
    "INF",
    "MoebiusMap",
    "Classification",
    "classify_isometry",
    "Geodesic",
    "Horocycle",
    "distance",
    "axis_or_fixed_point",
    "standard_chart",
    "Perpendicular",
    "perpendicular_between",
    "offset_curve_length",
]
