"""Gap measures: trace forms, ortholength forms and the grade limits."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    ConeDomain,
    InadmissibleGrade,
    NegativeDiscriminant,
    NonpositiveLength,
    OutOfRange,
)
from .hypcore import INF
from .surfaces import BoundaryShape

_RECURRENCE_MAX = 8


def chebyshev_T(k: int, x: float) -> float:
    """First-kind Chebyshev polynomial on [-1, inf)."""
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if x < -1.0:
        raise OutOfRange(f"x = {x} is below -1")
    if k <= _RECURRENCE_MAX:
        t0, t1 = 1.0, x
        for _ in range(k - 1):
            t0, t1 = t1, 2.0 * x * t1 - t0
        return t1
    if x <= 1.0:
        return math.cos(k * math.acos(x))
    return math.cosh(k * math.acosh(x))


def p_poly(x: float, y: float, z: float) -> float:
    return x * x + y * y + z * z + 2.0 * x * y * z - 1.0


def _exp_neg_half(c: float) -> float:
    # e^{-gamma/2} = c - sqrt(c^2-1), rationalised
    return 1.0 / (c + math.sqrt(max(c * c - 1.0, 0.0)))


@dataclass(frozen=True)
class GapMeasure:
    lam: float | None  # raw gap; None when the start is a cusp
    lam_k: float
    start: int | None = None


def graded_half_trace(shape: BoundaryShape, k) -> float:
    if k == INF or int(k) != k or k < 1:
        raise InadmissibleGrade(f"trace forms need a finite positive grade, got {k}")
    if shape.kind == "cone" and k * shape.value > math.pi + 1e-12:
        raise InadmissibleGrade(f"grade {k} with cone angle {shape.value:g} exceeds pi")
    return chebyshev_T(int(k), shape.half_trace)


def m_trace(A: float, B: float, c: float) -> float:
    s = math.sqrt(max(c * c - 1.0, 0.0))
    e = _exp_neg_half(c)
    return (A * A * e + A * B + s) / math.sqrt(p_poly(A, B, c))


def _graded_excess(shape: BoundaryShape, k) -> float:
    """T_k(x)^2 - 1 formed without cancellation: sinh^2 or -sin^2 of the graded half-angle."""
    if shape.kind == "cusp":
        return 0.0
    if shape.kind == "geodesic":
        return math.sinh(k * shape.value / 2.0) ** 2
    return -math.sin(k * shape.value / 2.0) ** 2


def _m_minus_one(A: float, B: float, c: float, alpha: float | None = None, beta: float | None = None) -> float:
    """M - 1 for the trace form without the cancellation near M = 1.

    With alpha = A^2 - 1, beta = B^2 - 1 and e = e^{-gamma/2} the numerator
    num^2 - p collapses to alpha (2e(c + AB) + alpha e^2 + beta).
    """
    alpha = A * A - 1.0 if alpha is None else alpha
    beta = B * B - 1.0 if beta is None else beta
    s = math.sqrt(max(c * c - 1.0, 0.0))
    e = _exp_neg_half(c)
    num = A * A * e + A * B + s
    rp = math.sqrt(p_poly(A, B, c))
    return alpha * (2.0 * e * (c + A * B) + alpha * e * e + beta) / (rp * (num + rp))


def gap_measure_traces(start: BoundaryShape, k_start, end: BoundaryShape, k_end, c: float, tol: float = 1e-9) -> GapMeasure:
    if c < 1.0 - tol:
        raise ValueError(f"half-trace c must be >= 1, got {c}")
    c = max(c, 1.0)
    B = graded_half_trace(end, k_end)
    if start.kind == "cusp":
        e = _exp_neg_half(c)
        if end.kind == "cusp":
            return GapMeasure(None, 4.0 * e / (1.0 + e))
        return GapMeasure(None, 2.0 * (B + e) / (B + c))
    A = graded_half_trace(start, k_start)
    alpha = _graded_excess(start, k_start)
    m1 = _m_minus_one(A, B, c, alpha, _graded_excess(end, k_end))
    if start.kind == "geodesic":
        lam = 2.0 * math.log1p(m1 + math.sqrt(max(m1 * (m1 + 2.0), 0.0)))
        return GapMeasure(lam, A / math.sqrt(alpha) * lam)
    if m1 > tol or m1 < -2.0 - tol:
        raise ConeDomain(f"cone-start M = {1.0 + m1} lies outside [-1, 1]")
    # acos near M = 1 via 1 - M
    lam = 4.0 * math.asin(math.sqrt(max(0.0, min(1.0, -m1 / 2.0))))
    if A <= 0.0:
        return GapMeasure(lam, 0.0)
    return GapMeasure(lam, A / math.sqrt(-alpha) * lam)


def gap_measure_ortholength(A: float, B: float, mu: float, case: int = 1) -> GapMeasure:
    """M = cosh(lambda/2) from the ortholength.

    case 1: both grades finite; case 2: end grade infinite (M = coth mu);
    case 3: start grade infinite. ``lam_k`` is the raw gap rescaled by
    A/sqrt(A^2-1), which is 1 when the start grade is infinite.
    """
    if not mu > 0:
        raise NonpositiveLength(f"ortholength must be positive, got {mu}")
    ch, sh = math.cosh(mu), math.sinh(mu)
    if case == 2:
        M = ch / sh
    elif case == 3:
        rb = B / math.sqrt(B * B - 1.0)
        # limit of case 1 as A -> inf: e^{-lambda/2} = (cosh mu - rb) / sinh mu
        M = (2.0 * ch * ch - 2.0 * rb * ch + 1.0 / (B * B - 1.0)) / (2.0 * sh * (ch - rb))
    elif case == 1:
        a2, b2 = A * A - 1.0, B * B - 1.0
        # M = coth mu + 1 / (b2 sinh mu (D + sqrt(D^2 - 1/(a2 b2)))) with
        # D = cosh mu - AB/sqrt(a2 b2); both D pieces are formed without
        # cancellation so that large grades stay accurate
        xy = (1.0 - 1.0 / (A * A)) * (1.0 - 1.0 / (B * B))
        rxy = math.sqrt(xy)
        q1 = (1.0 / (A * A) + 1.0 / (B * B) - 1.0 / (A * A * B * B)) / (rxy * (1.0 + rxy))
        D = 2.0 * math.sinh(mu / 2.0) ** 2 - q1
        disc = D * D - 1.0 / (a2 * b2)
        if disc < 0 or D < 0:
            if disc < -1e-12 or D < 0:
                raise NegativeDiscriminant(f"no pants with A={A}, B={B}, mu={mu}")
            disc = 0.0
        M = ch / sh + 1.0 / (b2 * sh * (D + math.sqrt(disc)))
    else:
        raise ValueError(f"unknown case {case}")
    lam = 2.0 * math.acosh(max(M, 1.0))
    scale = 1.0 if case == 3 else A / math.sqrt(A * A - 1.0)
    return GapMeasure(lam, scale * lam)


def m_ortholength(A: float, B: float, mu: float, case: int = 1) -> float:
    return math.cosh(gap_measure_ortholength(A, B, mu, case).lam / 2.0)


def hexagon_half_trace(A: float, B: float, mu: float) -> float:
    """Half-trace of gamma_mu from the ortholength between geodesic ends."""
    return math.sqrt(A * A - 1.0) * math.sqrt(B * B - 1.0) * math.cosh(mu) - A * B


def basmajian_measure(mu: float) -> float:
    if not mu > 0:
        raise NonpositiveLength(f"ortholength must be positive, got {mu}")
    return 2.0 * math.log(1.0 / math.tanh(mu / 2.0))


__all__ = [
    "chebyshev_T",
    "p_poly",
    "GapMeasure",
    "graded_half_trace",
    "m_trace",
    "gap_measure_traces",
    "gap_measure_ortholength",
    "m_ortholength",
    "hexagon_half_trace",
    "basmajian_measure",
]
