"""Surfaces as free Fuchsian groups with marked boundary words.

Each built-in model carries fundamental-domain data in side-pairing form:
for every letter s there is a half-plane D_s, bounded by a geodesic H_s,
such that s maps the outside of D_{s^-1} into D_s. The domain F is the
complement of all the D_s and contains the basepoint.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import words as W
from .errors import (
    ConeCuffUnsupported,
    DegenerateLength,
    LengthMismatch,
    SurfaceSpecError,
    UnknownName,
)
from .hypcore import INF, MoebiusMap, classify_isometry


@dataclass(frozen=True)
class BoundaryShape:
    kind: str  # "geodesic" | "cusp" | "cone"
    value: float | None = None

    def __post_init__(self):
        if self.kind == "geodesic":
            if self.value is None or not self.value > 0 or math.isinf(self.value):
                raise DegenerateLength(f"geodesic length must be positive and finite, got {self.value}")
        elif self.kind == "cone":
            if self.value is None or not 0 < self.value <= math.pi:
                raise ValueError(f"cone angle must lie in (0, pi], got {self.value}")
        elif self.kind == "cusp":
            if self.value is not None:
                raise ValueError("cusp takes no parameter")
        else:
            raise ValueError(f"unknown boundary kind {self.kind!r}")

    @classmethod
    def geodesic(cls, length: float) -> "BoundaryShape":
        return cls("geodesic", float(length))

    @classmethod
    def cusp(cls) -> "BoundaryShape":
        return cls("cusp")

    @classmethod
    def cone(cls, angle: float) -> "BoundaryShape":
        return cls("cone", float(angle))

    @property
    def half_trace(self) -> float:
        if self.kind == "geodesic":
            return math.cosh(self.value / 2.0)
        if self.kind == "cone":
            return math.cos(self.value / 2.0)
        return 1.0

    def __str__(self) -> str:
        return "cusp" if self.kind == "cusp" else f"{self.kind}({self.value:g})"


class Grading(tuple):
    """Per-boundary grades: positive ints or ``math.inf``."""

    def __new__(cls, grades: Sequence):
        out = []
        for g in grades:
            if isinstance(g, str):
                g = g.strip().lower()
                g = INF if g in ("inf", "infinity", "oo") else int(g)
            if g != INF:
                if int(g) != g or g < 1:
                    raise ValueError(f"grades must be positive integers or inf, got {g}")
                g = int(g)
            out.append(g)
        return super().__new__(cls, out)

    @classmethod
    def parse(cls, text: str) -> "Grading":
        try:
            return cls(text.split(","))
        except ValueError as exc:
            raise SurfaceSpecError(f"bad grading {text!r}: {exc}") from None

    @classmethod
    def uniform(cls, k, n: int) -> "Grading":
        return cls([k] * n)

    def shifted(self, by: int = 1) -> "Grading":
        return Grading([g + by if g != INF else INF for g in self])

    def __str__(self) -> str:
        return ",".join("inf" if g == INF else str(g) for g in self)


@dataclass(frozen=True)
class Boundary:
    word: W.Word
    shape: BoundaryShape


@dataclass(frozen=True)
class CuspVertex:
    """An ideal vertex of F that is a cusp, with its chart and orbit height.

    In the chart (vertex sent to infinity) the stabiliser is z -> z + t and
    no point of the basepoint orbit is higher than ``height``.
    """

    point: float
    chart: MoebiusMap
    t: float
    height: float


@dataclass(frozen=True, eq=False)
class SurfaceModel:
    name: str
    generators: tuple[MoebiusMap, ...]
    boundaries: tuple[Boundary, ...]
    genus: int
    sides: dict = field(repr=False)  # letter -> (p, q), D_s to the left
    basepoint: complex = 1j

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def n_boundaries(self) -> int:
        return len(self.boundaries)

    @property
    def shapes(self) -> tuple[BoundaryShape, ...]:
        return tuple(b.shape for b in self.boundaries)

    def letter_map(self, x: int) -> MoebiusMap:
        g = self.generators[abs(x) - 1]
        return g if x > 0 else g.inverse()

    def eval_word(self, word: Sequence[int]) -> MoebiusMap:
        m = MoebiusMap.identity()
        for x in word:
            m = m @ self.letter_map(x)
        return m

    def boundary_map(self, i: int) -> MoebiusMap:
        return self.eval_word(self.boundaries[i].word)

    @cached_property
    def letters(self) -> list[int]:
        return W.letters(self.rank)

    @cached_property
    def cusp_vertices(self) -> dict:
        """Cusp data for the ideal endpoints of the side geodesics."""
        found = {}
        cands = []
        for j, b in enumerate(self.boundaries):
            if b.shape.kind != "cusp":
                continue
            for u in W.reduced_words(self.rank, 2):
                cands.append(self.eval_word(W.mul(u, b.word, W.inverse(u))))
        for s, (p, q) in self.sides.items():
            for x in (p, q):
                if x in found:
                    continue
                for P in cands:
                    fx = _parabolic_fixed(P)
                    if _same_ideal(fx, x):
                        found[x] = _cusp_vertex(x, P, self.basepoint)
                        break
        return found

    def check(self, tol: float = 1e-8) -> list[str]:
        """Problems with the model; an empty list means it is consistent."""
        issues = []
        for i, b in enumerate(self.boundaries):
            cl = classify_isometry(self.eval_word(b.word), tol=1e-9)
            if b.shape.kind == "cusp" and cl.kind != "parabolic":
                issues.append(f"boundary {i}: expected parabolic, got {cl.kind}")
            if b.shape.kind == "geodesic":
                if cl.kind != "hyperbolic" or abs(cl.length - b.shape.value) > tol:
                    issues.append(f"boundary {i}: expected length {b.shape.value}, got {cl}")
        if 2 * self.genus + self.n_boundaries - 1 != self.rank:
            issues.append("rank does not match topological type")
        return issues


def _parabolic_fixed(P: MoebiusMap) -> float:
    a, b, c, d = P.as_tuple()
    if abs(c) < 1e-12:
        return INF
    return (a - d) / (2.0 * c)


def _same_ideal(x: float, y: float, tol: float = 1e-9) -> bool:
    if math.isinf(x) or math.isinf(y):
        return math.isinf(x) and math.isinf(y)
    return abs(x - y) <= tol * max(1.0, abs(x))


def chart_to_infinity(p: float) -> MoebiusMap:
    if math.isinf(p):
        return MoebiusMap.identity()
    return MoebiusMap(0.0, -1.0, 1.0, -p)


def _cusp_vertex(p: float, P: MoebiusMap, base: complex) -> CuspVertex:
    M = chart_to_infinity(p)
    Q = M @ P @ M.inverse()
    t = abs(Q.b / Q.a)
    y = M(base).imag
    # Shimizu: off the stabiliser orbit, heights stay below t^2 / y
    return CuspVertex(p, M, t, max(y, t * t / y))


def ford_sides(gens: Sequence[MoebiusMap]) -> dict:
    """Ford domain sides: D_s is the inside of the isometric circle of s^-1."""
    sides = {}
    for g, m in enumerate(gens, start=1):
        for x, s in ((g, m), (-g, m.inverse())):
            a, b, c, d = s.as_tuple()
            if abs(c) < 1e-14:
                shift = b / a
                sides[x] = (INF, shift / 2.0) if shift > 0 else (shift / 2.0, INF)
            else:
                centre, rad = a / c, 1.0 / abs(c)
                sides[x] = (centre - rad, centre + rad)
    return sides


def _model(name, gens, bwords, shapes, genus, sides, base) -> SurfaceModel:
    bds = tuple(Boundary(W.reduce(w), s) for w, s in zip(bwords, shapes))
    s = SurfaceModel(name, tuple(gens), bds, genus, sides, base)
    issues = s.check()
    if issues:
        raise ValueError(f"inconsistent model {name}: {issues}")
    return s


def build_pants(s1: BoundaryShape, s2: BoundaryShape, s3: BoundaryShape) -> SurfaceModel:
    """Pair of pants with boundary words X, Y, (XY)^-1.

    Symmetric normal form: the axes of X and Y are concentric semicircles
    about 0 (radius r and 1), or X fixes 0 / Y fixes infinity for cusps.
    """
    for s in (s1, s2, s3):
        if s.kind == "cone":
            raise ConeCuffUnsupported("cone-point cuffs are not constructible")
    c3 = s3.half_trace
    if s1.kind == "geodesic":
        c1, sh1 = math.cosh(s1.value / 2), math.sinh(s1.value / 2)
    if s2.kind == "geodesic":
        c2, sh2 = math.cosh(s2.value / 2), math.sinh(s2.value / 2)

    if s1.kind == "geodesic" and s2.kind == "geodesic":
        ch_mu = (c1 * c2 + c3) / (sh1 * sh2)
        r = math.exp(-math.acosh(ch_mu))
        X = MoebiusMap(c1, r * sh1, sh1 / r, c1)
        Y = MoebiusMap(c2, -sh2, -sh2, c2)
        lo, hi = r, 1.0
    elif s1.kind == "cusp" and s2.kind == "geodesic":
        beta = 2.0 * (c3 + c2) / sh2
        X = MoebiusMap(1.0, 0.0, beta, 1.0)
        Y = MoebiusMap(c2, -sh2, -sh2, c2)
        lo, hi = 2.0 / beta, 1.0
    elif s1.kind == "geodesic" and s2.kind == "cusp":
        tau = 2.0 * (c1 + c3) / sh1
        X = MoebiusMap(c1, sh1, sh1, c1)
        Y = MoebiusMap(1.0, -tau, 0.0, 1.0)
        lo, hi = 1.0, tau / 2.0
    else:
        beta = math.sqrt(2.0 * (1.0 + c3))
        X = MoebiusMap(1.0, 0.0, beta, 1.0)
        Y = MoebiusMap(1.0, -beta, 0.0, 1.0)
        lo, hi = 2.0 / beta, beta / 2.0
    gens = (X, Y)
    name = "pants:" + ",".join("cusp" if s.kind == "cusp" else f"{s.value:g}" for s in (s1, s2, s3))
    base = complex(0.0, math.sqrt(lo * hi))
    return _model(name, gens, [(1,), (2,), (-2, -1)], (s1, s2, s3), 0, ford_sides(gens), base)


def _gamma2() -> SurfaceModel:
    A = MoebiusMap(1.0, 2.0, 0.0, 1.0)
    B = MoebiusMap(1.0, 0.0, 2.0, 1.0)
    cusp = BoundaryShape.cusp()
    # A * B^-1 * (B A^-1) = 1 keeps the three cusps consistently oriented
    return _model("gamma2", (A, B), [(1,), (-2,), (2, -1)], (cusp,) * 3, 0, ford_sides((A, B)), 1j)


def _modular_torus() -> SurfaceModel:
    A = MoebiusMap(1.0, 1.0, 1.0, 2.0)
    B = MoebiusMap(1.0, -1.0, -1.0, 2.0)
    sides = {1: (0.0, 1.0), -1: (-1.0, INF), 2: (-1.0, 0.0), -2: (INF, 1.0)}
    return _model(
        "modular_torus", (A, B), [(1, 2, -1, -2)], (BoundaryShape.cusp(),), 1, sides, 1j
    )


def _sym4() -> SurfaceModel:
    A = MoebiusMap(1.0, 2.0, 0.0, 1.0)
    B = MoebiusMap(1.0, 0.0, 2.0, 1.0)
    g1, g2, g3 = A @ A, B.inverse(), A @ B.inverse() @ A
    cusp = BoundaryShape.cusp()
    bwords = [(1,), (2,), (-2, -3), (3, -1)]
    return _model("sym4", (g1, g2, g3), bwords, (cusp,) * 4, 0, ford_sides((g1, g2, g3)), 1j)


_NAMED = {"gamma2": _gamma2, "modular_torus": _modular_torus, "sym4": _sym4}


def build_named(name: str) -> SurfaceModel:
    try:
        return _NAMED[name]()
    except KeyError:
        raise UnknownName(f"unknown surface {name!r}; known: {', '.join(_NAMED)}") from None


_PANTS = re.compile(r"^pants:([^,]+),([^,]+),([^,]+)$")


def parse_surface(spec: str) -> SurfaceModel:
    """``pants:<v>,<v>,<v>`` (v a positive length or ``cusp``) or a model name."""
    spec = spec.strip()
    m = _PANTS.match(spec)
    if not m:
        if spec in _NAMED:
            return build_named(spec)
        raise SurfaceSpecError(f"cannot parse surface {spec!r}")
    shapes = []
    for v in m.groups():
        v = v.strip()
        if v == "cusp":
            shapes.append(BoundaryShape.cusp())
            continue
        try:
            x = float(v)
        except ValueError:
            raise SurfaceSpecError(f"bad cuff {v!r}") from None
        shapes.append(BoundaryShape.geodesic(x))
    return build_pants(*shapes)


@dataclass(frozen=True)
class Admissibility:
    violations: tuple[str, ...]
    warnings: tuple[str, ...]
    model_type: str  # "hyperbolic" | "euclidean" | "spherical"

    @property
    def ok(self) -> bool:
        return not self.violations


def orbifold_euler(s: SurfaceModel, k: Grading) -> float:
    """Euler characteristic of the model orbifold (cone angles pi / k_i)."""
    chi = 2 - 2 * s.genus - s.n_boundaries
    for g in k:
        if g != INF:
            chi += 1.0 / (2 * g)
    return chi


def model_type(s: SurfaceModel, k: Grading, tol: float = 1e-12) -> str:
    chi = orbifold_euler(s, k)
    if abs(chi) <= tol:
        return "euclidean"
    return "hyperbolic" if chi < 0 else "spherical"


def admissibility_check(s: SurfaceModel, k: Grading) -> Admissibility:
    k = Grading(k)
    if len(k) != s.n_boundaries:
        raise LengthMismatch(f"grading has {len(k)} entries, surface has {s.n_boundaries} boundaries")
    bad, warn = [], []
    for i, (shape, g) in enumerate(zip(s.shapes, k)):
        if shape.kind == "cone":
            if g == INF:
                bad.append(f"boundary {i}: infinite grade on a cone point")
            elif g * shape.value > math.pi + 1e-12:
                bad.append(f"boundary {i}: grade {g} times angle {shape.value:g} exceeds pi")
    kind = model_type(s, k)
    if kind == "spherical":
        warn.append(f"grading {k} has no hyperbolic or Euclidean model orbifold")
    if s.genus == 0 and s.n_boundaries == 3:
        finite = [g for g in k if g != INF]
        if len(finite) == 3 and sum(finite) <= 4:
            warn.append(f"grading {k} has k+l+m <= 4")
    return Admissibility(tuple(bad), tuple(warn), kind)


__all__ = [
    "BoundaryShape",
    "Grading",
    "Boundary",
    "CuspVertex",
    "SurfaceModel",
    "Admissibility",
    "build_pants",
    "build_named",
    "parse_surface",
    "admissibility_check",
    "model_type",
    "orbifold_euler",
    "ford_sides",
    "chart_to_infinity",
]
