"""Minkowski-space helpers for the hyperboloid model.

Interior point z = x + iy maps to u = ((r^2+1)/2y, (r^2-1)/2y, x/y) with
r = |z|, and the form is <u, v> = -u0 v0 + u1 v1 + u2 v2. A matrix g acts on
vectors through the symmetric-matrix picture H -> g H g^T. Ideal points are
light vectors: finite p -> ((p^2+1)/2, (p^2-1)/2, p), infinity -> (1/2, 1/2, 0).
With these scalings -<u(z), L_p> = |z-p|^2 / 2y and -<u(z), L_inf> = 1 / 2y.
"""
from __future__ import annotations

import math

import numpy as np

J = np.array([-1.0, 1.0, 1.0])


def mink(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return -u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] + u[..., 2] * v[..., 2]


def cross(u, v):
    """Vector n with <n, u> = <n, v> = 0."""
    return J * np.cross(u, v)


def point(z: complex) -> np.ndarray:
    x, y = z.real, z.imag
    r2 = x * x + y * y
    return np.array([(r2 + 1.0) / (2.0 * y), (r2 - 1.0) / (2.0 * y), x / y])


def to_complex(u) -> complex:
    u = np.asarray(u, dtype=float)
    y = 1.0 / (u[0] - u[1])
    return complex(u[2] * y, y)


def light(p: float) -> np.ndarray:
    if math.isinf(p):
        return np.array([0.5, 0.5, 0.0])
    return np.array([(p * p + 1.0) / 2.0, (p * p - 1.0) / 2.0, p])


def ideal_of(L) -> float:
    L = np.asarray(L, dtype=float)
    den = L[0] - L[1]
    if abs(den) <= 1e-14 * max(1.0, abs(L[0])):
        return math.inf
    return float(L[2] / den)


def _sym(u):
    # symmetric matrix [[u0+u1, u2], [u2, u0-u1]]
    return np.array([[u[0] + u[1], u[2]], [u[2], u[0] - u[1]]])


def act(m, u) -> np.ndarray:
    """Apply the Moebius map with matrix entries (a, b, c, d) to a vector."""
    a, b, c, d = m
    g = np.array([[a, b], [c, d]])
    h = g @ _sym(np.asarray(u, dtype=float)) @ g.T
    return np.array([(h[0, 0] + h[1, 1]) / 2.0, (h[0, 0] - h[1, 1]) / 2.0, h[0, 1]])


def geodesic_normal(p: float, q: float) -> np.ndarray:
    """Unit spacelike normal of the geodesic from p to q.

    The sign is fixed so that <u, n> > 0 on the left of the oriented line.
    """
    n = cross(light(p), light(q))
    n = n / math.sqrt(mink(n, n))
    # left of (0 -> inf) is x < 0; calibrate with a probe point
    probe = _left_probe(p, q)
    if mink(point(probe), n) < 0:
        n = -n
    return n


def _left_probe(p: float, q: float) -> complex:
    if math.isinf(q):
        return complex(p - 1.0, 1.0)
    if math.isinf(p):
        return complex(q + 1.0, 1.0)
    mid, rad = (p + q) / 2.0, abs(q - p) / 2.0
    # walking from p to q along the upper semicircle, the left side is inside
    # the disc when p < q and outside when p > q
    return complex(mid, rad / 2.0) if p < q else complex(mid, rad * 2.0)


def horoball_vector(p: float, level: float) -> np.ndarray:
    """Light vector L with the open horoball equal to {u : -<u, L> < 1}.

    ``level`` is the height when p is infinity and the diameter otherwise.
    """
    if math.isinf(p):
        return 2.0 * level * light(p)
    return (2.0 / level) * light(p)


def min_on_segment(alpha: float, beta: float, T: float) -> float:
    """Minimum of alpha*cosh t + beta*sinh t over t in [0, T]."""
    vals = [alpha]
    if math.isinf(T):
        if alpha + beta < 0:
            return -math.inf
    else:
        vals.append(alpha * math.cosh(T) + beta * math.sinh(T))
    if abs(beta) < abs(alpha) and alpha > 0:
        ts = math.atanh(-beta / alpha)
        if 0.0 < ts < T:
            vals.append(math.copysign(math.sqrt(alpha * alpha - beta * beta), alpha))
    return min(vals)


def max_on_segment(alpha: float, beta: float, T: float) -> float:
    return -min_on_segment(-alpha, -beta, T)


def min_on_segments(alpha: np.ndarray, beta: np.ndarray, T: float) -> np.ndarray:
    """Vectorised min_on_segment for a finite T."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    out = np.minimum(alpha, alpha * math.cosh(T) + beta * math.sinh(T))
    inner = (np.abs(beta) < np.abs(alpha)) & (alpha > 0)
    with np.errstate(invalid="ignore", divide="ignore"):
        ts = np.arctanh(np.where(inner, -beta / np.where(alpha == 0, 1.0, alpha), 0.0))
        crit = np.sqrt(np.maximum(alpha * alpha - beta * beta, 0.0))
    inner &= (ts > 0.0) & (ts < T)
    return np.where(inner, np.minimum(out, crit), out)


def segment(p: np.ndarray, q: np.ndarray):
    """Unit-speed parametrisation x(t) = cosh t P + sinh t V, t in [0, T]."""
    ch = -mink(p, q)
    T = math.acosh(max(ch, 1.0))
    if T < 1e-15:
        return p, np.zeros(3), 0.0
    v = (q - ch * p) / math.sinh(T)
    return p, v, T
