"""Natural collars and the lengths of concave-core boundaries."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InadmissibleConeGrade, NonGeodesicShape
from .hypcore import INF
from .surfaces import BoundaryShape, Grading


def _check_grade(k) -> None:
    if k != INF and (int(k) != k or k < 1):
        raise ValueError(f"grade must be a positive integer or inf, got {k}")


def _cone_half(shape: BoundaryShape, k) -> float:
    if k == INF or k * shape.value > math.pi + 1e-12:
        raise InadmissibleConeGrade(f"grade {k} with cone angle {shape.value:g} exceeds pi")
    return min(k * shape.value / 2.0, math.pi / 2.0)


def collar_width(shape: BoundaryShape, k) -> float:
    """Collar width, or for a cusp the boundary length 2/k of its horoball."""
    _check_grade(k)
    if shape.kind == "cusp":
        return 2.0 / k
    if shape.kind == "cone":
        return math.acosh(1.0 / math.sin(_cone_half(shape, k)))
    if k == INF:
        return 0.0
    return math.asinh(1.0 / math.sinh(k * shape.value / 2.0))


def core_boundary_length(shape: BoundaryShape, k) -> float:
    _check_grade(k)
    if shape.kind == "cusp":
        return 2.0 / k
    if shape.kind == "cone":
        x = _cone_half(shape, k)
        return 0.0 if x >= math.pi / 2.0 else shape.value / math.tan(x)
    if k == INF:
        return shape.value
    return shape.value / math.tanh(k * shape.value / 2.0)


def loop_penetration_distance(loop_length: float, shape: BoundaryShape, k) -> float:
    """Distance d with cosh d = tanh(L/2) coth(k l/2) for a loop turning k times."""
    if shape.kind != "geodesic":
        raise NonGeodesicShape("only geodesic boundaries have a closed-form loop distance")
    if not loop_length > 0:
        raise ValueError("loop length must be positive")
    x = math.tanh(loop_length / 2.0) / math.tanh(k * shape.value / 2.0)
    return math.acosh(max(x, 1.0))


@dataclass(frozen=True)
class CollarSpec:
    shape: BoundaryShape
    grade: int | float
    width: float


@dataclass(frozen=True)
class ConcaveCore:
    collars: tuple[CollarSpec, ...]
    lengths: tuple[float, ...]

    @property
    def total(self) -> float:
        return math.fsum(self.lengths)


def concave_core(shapes, k: Grading) -> ConcaveCore:
    specs = tuple(CollarSpec(s, g, collar_width(s, g)) for s, g in zip(shapes, k))
    return ConcaveCore(specs, tuple(core_boundary_length(s, g) for s, g in zip(shapes, k)))


__all__ = [
    "collar_width",
    "core_boundary_length",
    "loop_penetration_distance",
    "CollarSpec",
    "ConcaveCore",
    "concave_core",
]
