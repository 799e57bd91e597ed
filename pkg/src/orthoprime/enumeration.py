"""Orthogeodesic classes as double cosets <B_i> w <B_j>.

Every class with gamma-length at most L has a representative w whose feet
sit in the fundamental windows of both boundary lifts. Such a w satisfies
d(O, wO) <= mu + reach_i + reach_j, so a finite orbit ball contains it; the
ball is searched once and each pair of boundaries is filtered from it.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import hyperboloid as H
from . import words as W
from .ball import orbit_ball
from .tiling import start_frame, walk
from .errors import InadmissibleGrading, NumericallyAmbiguous
from .hypcore import INF, Geodesic, MoebiusMap, axis_or_fixed_point, classify_isometry, distance, standard_chart
from .lifts import BaseLift, base_lifts, local_lifts
from .measures import graded_half_trace
from .surfaces import Grading, SurfaceModel, admissibility_check

TOL = 1e-9


@dataclass(frozen=True)
class EnumerationCutoff:
    gamma_max: float
    word_max: int = 4096
    margin: float = 0.5

    def __post_init__(self):
        if not self.gamma_max > 0:
            raise ValueError("gamma_max must be positive")
        if self.word_max < 1:
            raise ValueError("word_max must be at least 1")


@dataclass(frozen=True)
class OrthoClass:
    start: int
    end: int
    word: W.Word
    c: float
    gamma_length: float
    ortholength: float
    depth: tuple[int, ...] = ()
    prime: bool = False
    ambiguous: bool = False

    @property
    def key(self) -> tuple:
        return (self.start, self.end, self.word)

    @property
    def word_str(self) -> str:
        return W.to_str(self.word)

    def reversed_key(self) -> tuple:
        return (self.end, self.start, None)


def canonicalize(s: SurfaceModel, w: Sequence[int], i: int, j: int) -> W.Word:
    """Normal form of w in <B_i> \\ G / <B_j>."""
    return W.double_coset_canonical(w, s.boundaries[i].word, s.boundaries[j].word)


def half_trace(s: SurfaceModel, k: Grading, i: int, j: int, w: Sequence[int]) -> float:
    bi, bj = s.boundaries[i].word, s.boundaries[j].word
    g = W.mul(W.power(bi, k[i]), w, W.power(bj, k[j]), W.inverse(w))
    return s.eval_word(g).half_trace


def gamma_word(s: SurfaceModel, k: Grading, i: int, j: int, w: Sequence[int]) -> W.Word:
    bi, bj = s.boundaries[i].word, s.boundaries[j].word
    return W.mul(W.power(bi, k[i]), w, W.power(bj, k[j]), W.inverse(w))


# ---------------------------------------------------------------------------
# cutoff geometry


def max_ortholength(lift_i: BaseLift, ki, lift_j: BaseLift, kj, c_max: float, shapes) -> float:
    """Largest ortholength between the grade collars compatible with c <= c_max."""
    if lift_i.kind == "geodesic" and lift_j.kind == "geodesic":
        A = graded_half_trace(shapes[lift_i.index], ki)
        B = graded_half_trace(shapes[lift_j.index], kj)
        return math.acosh((c_max + A * B) / math.sqrt((A * A - 1) * (B * B - 1)))
    if lift_i.kind == "cusp" and lift_j.kind == "cusp":
        return math.log((c_max + 1.0) / 2.0)
    geo = lift_j if lift_i.kind == "cusp" else lift_i
    B = graded_half_trace(shapes[geo.index], kj if geo is lift_j else ki)
    return math.log((c_max + B) / math.sqrt(B * B - 1.0))


def _pair_matrices(mats: np.ndarray, Mi: MoebiusMap, Mj: MoebiusMap) -> np.ndarray:
    """K = M_i W M_j^-1 for every row W."""
    a, b, c, d = Mi.as_tuple()
    e, f, g, h = Mj.inverse().as_tuple()
    A, B, C, D = mats[:, 0], mats[:, 1], mats[:, 2], mats[:, 3]
    # (M_i W)
    p, q, r, s = a * A + b * C, a * B + b * D, c * A + d * C, c * B + d * D
    return np.stack([p * e + q * g, p * f + q * h, r * e + s * g, r * f + s * h], axis=1)


def _foot_coords(K: np.ndarray, kind_i: str, kind_j: str):
    a, b, c, d = K[:, 0], K[:, 1], K[:, 2], K[:, 3]
    with np.errstate(divide="ignore", invalid="ignore"):
        if kind_i == "geodesic":
            fi = 0.5 * np.log(a * b / (c * d)) if kind_j == "geodesic" else np.log(np.abs(a / c))
        else:
            fi = 0.5 * (b / d + a / c) if kind_j == "geodesic" else a / c
        if kind_j == "geodesic":
            fj = 0.5 * np.log(b * d / (a * c)) if kind_i == "geodesic" else np.log(np.abs(d / c))
        else:
            fj = -0.5 * (b / a + d / c) if kind_i == "geodesic" else -d / c
    return fi, fj


def _diag_power(lift: BaseLift, k) -> np.ndarray:
    if lift.kind == "geodesic":
        e = math.exp(k * lift.period / 2.0)
        return np.array([e, 0.0, 0.0, 1.0 / e])
    N = lift.chart @ lift.element @ lift.chart.inverse()
    return np.array([1.0, k * N.b / N.a, 0.0, 1.0])


def _half_traces(K: np.ndarray, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    # |tr(P K Q K^-1)| / 2 with K^-1 = [[d, -b], [-c, a]]
    a, b, c, d = K[:, 0], K[:, 1], K[:, 2], K[:, 3]
    p0, p1, p2, p3 = P
    q0, q1, q2, q3 = Q
    # X = P K
    x0, x1, x2, x3 = p0 * a + p1 * c, p0 * b + p1 * d, p2 * a + p3 * c, p2 * b + p3 * d
    # Y = Q K^-1
    y0, y1, y2, y3 = q0 * d - q1 * c, -q0 * b + q1 * a, q2 * d - q3 * c, -q2 * b + q3 * a
    return np.abs(x0 * y0 + x1 * y2 + x2 * y1 + x3 * y3) / 2.0


def _in_window(x: np.ndarray, lift: BaseLift) -> np.ndarray:
    lo, hi = lift.window
    eps = 1e-9 * max(1.0, abs(lift.period), abs(lo), abs(hi))
    with np.errstate(invalid="ignore"):
        return (x >= lo - eps) & (x <= hi + eps)


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class Enumeration:
    classes: list[OrthoClass]
    possibly_incomplete: bool
    ambiguous: list[tuple] = field(default_factory=list)

    def __iter__(self):
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def primes(self) -> list[OrthoClass]:
        return [x for x in self.classes if x.prime]


def _sort_key(x: OrthoClass):
    return (x.gamma_length, x.start, W._key(x.word))


def find_classes(s: SurfaceModel, k: Grading, cut: EnumerationCutoff):
    """Distinct (i, j, canonical word) with gamma-length <= L, plus truncation flag."""
    k = Grading(k)
    lifts = base_lifts(s)
    shapes = s.shapes
    c_max = math.cosh(cut.gamma_max / 2.0)
    n = s.n_boundaries
    radius = {}
    for i in range(n):
        for j in range(n):
            mu = max(max_ortholength(lifts[i], k[i], lifts[j], k[j], c_max, shapes), 0.0)
            radius[i, j] = mu + lifts[i].reach(s.basepoint, k[i]) + lifts[j].reach(s.basepoint, k[j]) + cut.margin
    ball = orbit_ball(s, max(radius.values()), cut.word_max)
    members = ball.members
    mats = ball.mats[members]
    dist = ball.dist[members]
    found: dict[tuple, float] = {}
    for i in range(n):
        Pi = _diag_power(lifts[i], k[i])
        for j in range(n):
            sel = dist <= radius[i, j]
            K = _pair_matrices(mats[sel], lifts[i].chart, lifts[j].chart)
            fi, fj = _foot_coords(K, lifts[i].kind, lifts[j].kind)
            ok = _in_window(fi, lifts[i]) & _in_window(fj, lifts[j])
            if i == j:
                scale = np.abs(K).max(axis=1)
                same = np.abs(K[:, 2]) <= 1e-9 * scale
                if lifts[i].kind == "geodesic":
                    same &= np.abs(K[:, 1]) <= 1e-9 * scale
                ok &= ~same
            c = _half_traces(K, Pi, _diag_power(lifts[j], k[j]))
            ok &= c <= c_max * (1 + 1e-12)
            for idx in members[sel][ok]:
                w = canonicalize(s, ball.word(int(idx)), i, j)
                if i == j and not w:
                    continue
                found.setdefault((i, j, w), None)
    return list(found), ball.truncated


def enumerate_classes(
    s: SurfaceModel,
    k: Grading,
    cut: EnumerationCutoff,
    local_depth: int = 2,
    strict: bool = False,
) -> Enumeration:
    """Oriented orthogeodesic classes with gamma-length <= cut.gamma_max.

    Classes are sorted by (gamma-length, start, canonical word) and carry
    depth and primality for the grading ``k``.
    """
    k = Grading(k)
    adm = admissibility_check(s, k)
    if not adm.ok:
        raise InadmissibleGrading("; ".join(adm.violations))
    keys, truncated = find_classes(s, k, cut)
    out, amb = [], []
    for i, j, w in keys:
        x = describe(s, k, i, j, w, local_depth=local_depth)
        if x.gamma_length > cut.gamma_max:
            continue
        if x.ambiguous:
            if strict:
                raise NumericallyAmbiguous(f"class {(i, j, W.to_str(w))} sits on a collar threshold")
            amb.append(x.key)
        out.append(x)
    out.sort(key=_sort_key)
    return Enumeration(out, truncated, amb)


# ---------------------------------------------------------------------------
# per-class geometry


def describe(s: SurfaceModel, k: Grading, i: int, j: int, w: Sequence[int], local_depth: int = 2) -> OrthoClass:
    k = Grading(k)
    w = W.reduce(w)
    c = half_trace(s, k, i, j, w)
    if abs(c - 1.0) <= 1e-12:
        c = 1.0  # parabolic; acosh would blow rounding up to ~1e-7
    gl = 2.0 * math.acosh(max(c, 1.0))
    seg = _arc(s, i, j, w)
    mu = ortholength(s, k, i, j, w)
    dep, amb1 = _depth(s, i, j, w, seg, local_depth)
    prime, amb2 = False, False
    if all(d <= g for d, g in zip(dep, k)):
        prime, amb2 = _prime(s, k, i, j, w, c, local_depth)
    return OrthoClass(i, j, w, c, gl, mu, dep, prime, amb1 or amb2)


def _chart_pair(s: SurfaceModel, i: int, j: int, w) -> tuple[BaseLift, BaseLift, MoebiusMap]:
    lifts = base_lifts(s)
    K = lifts[i].chart @ s.eval_word(w) @ lifts[j].chart.inverse()
    return lifts[i], lifts[j], K


def ortholength(s: SurfaceModel, k: Grading, i: int, j: int, w) -> float:
    """Ortholength; with a cusp end, measured from that end's grade-k horocycle."""
    li, lj, K = _chart_pair(s, i, j, w)
    a, b, c, d = K.as_tuple()
    if li.kind == "geodesic" and lj.kind == "geodesic":
        u, v = sorted((abs(b / d), abs(a / c)))
        return math.acosh((v + u) / (v - u))
    if li.kind == "cusp" and lj.kind == "cusp":
        return math.log(li.horo_height(k[i]) * lj.horo_height(k[j]) * c * c)
    if li.kind == "cusp":
        r = abs(a / c - b / d) / 2.0
        return math.log(li.horo_height(k[i]) / r)
    r = abs(b / a - d / c) / 2.0
    return math.log(lj.horo_height(k[j]) / r)


def ortho_segment(s: SurfaceModel, i: int, j: int, w):
    """End points of the orthogeodesic arc (cusp ends cut at the length-2 horocycle).

    Returns two points in the upper half-plane, on the base lift of boundary
    i and on w applied to the base lift of boundary j.
    """
    back, z1, z2, _ = _segment_chart(s, i, j, w)
    return back(z1), back(z2)


def _arc(s: SurfaceModel, i: int, j: int, w):
    """Start point, forward ideal point and length of the orthogeodesic arc.

    The length and direction come from the chart of the start lift, where
    they are accurate even when the far end is close to the real line.
    """
    back, z1, z2, ideal = _segment_chart(s, i, j, w)
    return back(z1), back(ideal), distance(z1, z2)


def _segment_chart(s: SurfaceModel, i: int, j: int, w):
    """Arc end points and forward ideal point in the chart of the start lift."""
    li, lj, K = _chart_pair(s, i, j, w)
    a, b, c, d = K.as_tuple()
    h1i, h1j = li.horo_height(1), lj.horo_height(1)
    if li.kind == "geodesic":
        if lj.kind == "geodesic":
            x1, x2 = b / d, a / c
            sgn = 1.0 if x1 > 0 else -1.0
            u, v = sorted((abs(x1), abs(x2)))
            r = math.sqrt(u * v)
            m, rho = (u + v) / 2.0, (v - u) / 2.0
            # circle |z| = r meets |z - m| = rho at x = uv/m, y = r rho/m
            z1 = complex(0.0, r)
            z2 = complex(sgn * u * v / m, r * rho / m)
            ideal = sgn * r
        else:
            x = a / c
            D1 = 1.0 / (c * c * h1j)
            phi = 2.0 * math.atan(D1 / (2.0 * abs(x)))
            z1 = complex(0.0, abs(x))
            z2 = complex(math.copysign(abs(x) * math.cos(phi), x), abs(x) * math.sin(phi))
            ideal = x
    else:
        if lj.kind == "geodesic":
            x1, x2 = b / d, a / c
            m, r = (x1 + x2) / 2.0, abs(x2 - x1) / 2.0
            z1, z2 = complex(m, h1i), complex(m, r)
            ideal = m
        else:
            x = a / c
            z1, z2 = complex(x, h1i), complex(x, 1.0 / (c * c * h1j))
            ideal = x
    return li.chart.inverse(), z1, z2, ideal


def _fixed_points(mats: np.ndarray, kind: str) -> np.ndarray:
    a, b, c, d = mats[:, 0], mats[:, 1], mats[:, 2], mats[:, 3]
    with np.errstate(divide="ignore", invalid="ignore"):
        if kind == "cusp":
            x = np.where(np.abs(c) < 1e-12 * np.abs(a), np.inf, (a - d) / (2 * c))
            return x[:, None]
        disc = np.sqrt((d - a) ** 2 + 4 * b * c)
        r1 = (a - d + disc) / (2 * c)
        r2 = (a - d - disc) / (2 * c)
        flat = np.abs(c) < 1e-12 * np.abs(a)
        r1 = np.where(flat, b / (d - a), r1)
        r2 = np.where(flat, np.inf, r2)
        return np.stack([r1, r2], axis=1)


def _lights(pts: np.ndarray) -> np.ndarray:
    out = np.empty(pts.shape + (3,))
    inf = np.isinf(pts)
    p = np.where(inf, 0.0, pts)
    out[..., 0] = np.where(inf, 0.5, (p * p + 1) / 2)
    out[..., 1] = np.where(inf, 0.5, (p * p - 1) / 2)
    out[..., 2] = np.where(inf, 0.0, p)
    return out


def _normals(fixed: np.ndarray) -> np.ndarray:
    L1, L2 = _lights(fixed[:, 0]), _lights(fixed[:, 1])
    n = H.J * np.cross(L1, L2)
    nn = np.sqrt(np.abs(H.mink(n, n)))
    return n / nn[:, None]


def _depth(s: SurfaceModel, i: int, j: int, w, seg, local_depth: int):
    """Least k per boundary with the arc interior outside the open k-collars.

    The arc is walked tile by tile; in each tile only the boundary lifts
    near that tile are measured, in the tile's own frame.
    """
    z1, toward, T = seg
    loc = local_lifts(s, local_depth)
    shapes = s.shapes
    ell = np.array([shapes[b].value for b in loc.geo_boundary])
    width1 = np.array([_width(shapes[b], 1) for b in loc.geo_boundary])
    dep = [1] * s.n_boundaries
    amb = False

    w_inv = W.inverse(W.reduce(w))

    def own(g, u, b):
        # the lift g u B_b u^-1 g^-1 is the start lift iff g u lies in <B_i>,
        # the end lift iff w^-1 g u lies in <B_j>
        x = W.mul(g, u)
        if b == i and not canonicalize(s, x, i, i):
            return True
        return b == j and not canonicalize(s, W.mul(w_inv, x), j, j)

    if T < 1e-12:
        return tuple(dep), amb
    g, P, V = start_frame(s, z1, toward)
    for st in walk(s, g, P, V, T):
        span = min(st.exit, T - st.start)
        if span <= 0:
            continue
        if len(loc.normals):
            al = loc.normals @ (H.J * st.P)
            be = loc.normals @ (H.J * st.V)
            lo = H.min_on_segments(al, be, span)
            hi = -H.min_on_segments(-al, -be, span)
            cross = (lo <= 0.0) & (hi >= 0.0)
            d = np.where(cross, 0.0, np.arcsinh(np.minimum(np.abs(lo), np.abs(hi))))
            for idx in np.flatnonzero(d < width1 - TOL):
                b = int(loc.geo_boundary[idx])
                if own(st.word, loc.geo_words[idx], b):
                    continue
                if d[idx] <= 0.0:
                    need = INF
                else:
                    x = 2.0 * math.asinh(1.0 / math.sinh(d[idx])) / ell[idx]
                    need = max(1, math.ceil(x - TOL))
                    amb |= abs(x - round(x)) <= TOL and round(x) >= 1
                dep[b] = max(dep[b], need)
        if len(loc.horo):
            al = -(loc.horo @ (H.J * st.P))
            be = -(loc.horo @ (H.J * st.V))
            m1 = H.min_on_segments(al, be, span)
            for idx in np.flatnonzero(m1 < 1.0 - TOL):
                b = int(loc.cusp_boundary[idx])
                if own(st.word, loc.cusp_words[idx], b):
                    continue
                x = 1.0 / m1[idx]
                need = max(1, math.ceil(x - TOL))
                amb |= abs(x - round(x)) <= TOL
                dep[b] = max(dep[b], need)
    return tuple(dep), amb


def depth(s: SurfaceModel, x: OrthoClass, local_depth: int = 2) -> tuple[int, ...]:
    seg = _arc(s, x.start, x.end, x.word)
    return _depth(s, x.start, x.end, x.word, seg, local_depth)[0]


def _prime(s: SurfaceModel, k: Grading, i: int, j: int, w, c: float, local_depth: int):
    """Does the closed geodesic gamma_mu stay out of the open grade collars?"""
    if c <= 1.0 + TOL:
        return False, False
    g = W.cyclic_reduce(gamma_word(s, k, i, j, w))
    # the cyclic rotations of g have the translates of its axis that pass
    # through consecutive tiles; evaluating each keeps the fixed points accurate
    rots = np.array([s.eval_word(r).as_tuple() for r in W.rotations(g)])
    ends = _fixed_points(rots, "geodesic")
    E1, E2 = _lights(ends[:, 0]), _lights(ends[:, 1])
    loc = local_lifts(s, local_depth)
    shapes = s.shapes
    amb = False
    if len(loc.normals):
        N = _normals(ends)
        thr = np.array([math.cosh(_width(shapes[b], k[b])) for b in loc.geo_boundary])
        dots = np.abs(_mink_outer(N, loc.normals))
        gap = dots - thr[None, :]
        if (gap < -TOL).any():
            return False, False
        amb |= bool((np.abs(gap) <= TOL).any())
    if len(loc.horo):
        kk = np.array([k[b] for b in loc.cusp_boundary], dtype=float)
        L = loc.horo * kk[:, None]
        a = -_mink_outer(E1, L)
        b = -_mink_outer(E2, L)
        e12 = -2.0 * H.mink(E1, E2)
        val = 4.0 * a * b / e12[:, None]
        if (val < 1.0 - TOL).any():
            return False, False
        amb |= bool((np.abs(val - 1.0) <= TOL).any())
    return True, amb


def _width(shape, k):
    from .collars import collar_width

    return collar_width(shape, k)


def _mink_outer(U: np.ndarray, V: np.ndarray) -> np.ndarray:
    return (U * H.J) @ V.T


def is_prime(s: SurfaceModel, x: OrthoClass, k: Grading, local_depth: int = 2, strict: bool = False) -> bool:
    k = Grading(k)
    dep = depth(s, x, local_depth)
    if any(d > g for d, g in zip(dep, k)):
        return False
    c = half_trace(s, k, x.start, x.end, x.word)
    ok, amb = _prime(s, k, x.start, x.end, x.word, c, local_depth)
    if amb and strict:
        raise NumericallyAmbiguous(f"class {x.key} sits on a collar threshold")
    return ok


def is_simple(s: SurfaceModel, word: Sequence[int], tol: float = 1e-8) -> bool:
    """Whether the closed geodesic of a hyperbolic word has no self-crossings.

    The axis is walked for one period; if it meets the tiles u_1 .. u_m then
    every lift through u_j(F) is u_j u_i^-1 applied to the axis, and the
    curve is simple iff none of these crosses the axis. Crossing is read off
    in the chart where the axis is (0, inf): the image endpoints then have
    opposite signs, neither of them close to 0 or inf.
    """
    g = s.eval_word(word)
    ax = axis_or_fixed_point(g)
    if not isinstance(ax, Geodesic):
        raise ValueError("word is not hyperbolic")
    period = classify_isometry(g).length
    chart = standard_chart(ax)
    u0, P, V = start_frame(s, chart.back(1j), ax.end)
    tiles = [s.eval_word(st.word) for st in walk(s, u0, P, V, T=period)]
    M, Mi = chart.m, chart.m.inverse()
    for ui in tiles:
        for uj in tiles:
            h = M @ uj @ ui.inverse() @ Mi
            x, y = h(0.0), h(INF)
            if math.isinf(x) or math.isinf(y) or x * y >= 0:
                continue
            if all(tol < abs(v) < 1.0 / tol for v in (x, y)):
                return False
    return True


CSV_COLUMNS = ["start", "end", "canonical_word", "c", "gamma_length", "ortholength", "depth_vector", "prime_flags"]


def classes_csv(classes: Iterable[OrthoClass]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_COLUMNS)
    for x in classes:
        flag = ("1" if x.prime else "0") + ("?" if x.ambiguous else "")
        wr.writerow([
            x.start + 1, x.end + 1, x.word_str, repr(x.c), repr(x.gamma_length),
            repr(x.ortholength), ";".join(str(d) for d in x.depth), flag,
        ])
    return buf.getvalue()
