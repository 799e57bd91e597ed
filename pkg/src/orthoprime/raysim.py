"""Orthorays from the concave-core boundary and the gaps of prime classes.

Coordinates on a component of the concave-core boundary are arclengths.
In the chart of the base lift this is cosh(w) log|z| for a geodesic boundary
(w the collar width) and Re z / h_k for a cusp (h_k the horocycle height).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import hyperboloid as H
from . import words as W
from .collars import collar_width, core_boundary_length
from .enumeration import OrthoClass, canonicalize
from .errors import NoDomainData
from .hypcore import axis_or_fixed_point
from .lifts import BaseLift, base_lifts, local_lifts
from .measures import gap_measure_traces
from .surfaces import Grading, SurfaceModel
from .tiling import start_frame, walk


@dataclass(frozen=True)
class GapInterval:
    cls: OrthoClass
    boundary: int
    lo: float  # arclength, measured from the component's origin
    hi: float
    foot: float

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass
class GapReport:
    intervals: list[GapInterval]
    lengths: dict[int, float]
    coverage: dict[int, float]
    max_overlap: float
    max_width_error: float


@dataclass(frozen=True)
class RayOutcome:
    boundary: int
    s0: float
    exited: bool
    cls: tuple | None = None  # (start, end, canonical word) of the first crossing
    time: float | None = None
    steps: int = 0

    @property
    def outcome(self) -> str:
        return "exit" if self.exited else "alive"


# ---------------------------------------------------------------------------
# coordinates


class _Coords:
    """Arclength coordinates on the concave-core boundary of one component."""

    def __init__(self, s: SurfaceModel, k: Grading, i: int, origin: float = 0.0):
        self.lift: BaseLift = base_lifts(s)[i]
        self.shape = s.shapes[i]
        self.k = k[i]
        self.origin = origin
        self.length = core_boundary_length(self.shape, self.k)
        if self.lift.kind == "geodesic":
            self.scale = math.cosh(collar_width(self.shape, self.k))
            z = self.lift.chart(s.basepoint)
            self.side = 1.0 if z.real > 0 else -1.0
        else:
            self.scale = 1.0 / self.lift.horo_height(self.k)
            self.side = 1.0

    def raw(self, x: float) -> float:
        """Arclength of the orthoray ending at chart point x (origin not removed)."""
        if self.lift.kind == "geodesic":
            return self.scale * math.log(abs(x))
        return self.scale * x

    def __call__(self, x: float) -> float:
        return self.raw(x) - self.origin

    def start(self, s0: float):
        """Chart start point and ideal end of the orthoray at arclength s0."""
        u = (s0 + self.origin) / self.scale
        if self.lift.kind == "geodesic":
            w = collar_width(self.shape, self.k)
            r = math.exp(u)
            z = r * complex(self.side * math.tanh(w), 1.0 / math.cosh(w))
            return z, self.side * r
        return complex(u, self.lift.horo_height(self.k)), u


# ---------------------------------------------------------------------------
# gaps


def _gap_chart(s: SurfaceModel, k: Grading, x: OrthoClass):
    """Chart endpoints of the gap: inner ends of the axes of ab and ba."""
    lift = base_lifts(s)[x.start]
    bi, bj = s.boundaries[x.start].word, s.boundaries[x.end].word
    a = s.eval_word(W.power(bi, k[x.start]))
    b = s.eval_word(W.mul(x.word, W.power(bj, k[x.end]), W.inverse(x.word)))
    M = lift.chart
    pts = []
    for g in (a @ b, b @ a):
        ax = axis_or_fixed_point(M @ g @ M.inverse())
        pts.append(sorted((ax.start, ax.end)))
    (p1, q1), (p2, q2) = sorted(pts)
    if not q1 <= p2:
        raise ValueError(f"gap axes overlap for class {x.key}")
    return q1, p2


def _foot_chart(s: SurfaceModel, x: OrthoClass) -> float:
    lift = base_lifts(s)[x.start]
    lj = base_lifts(s)[x.end]
    K = lift.chart @ s.eval_word(x.word) @ lj.chart.inverse()
    a, b, c, d = K.as_tuple()
    if lj.kind == "geodesic":
        u, v = b / d, a / c
        if lift.kind == "geodesic":
            return math.copysign(math.sqrt(u * v), u)
        return (u + v) / 2.0
    return a / c


def _origin(s: SurfaceModel, k: Grading, i: int, primes: Sequence[OrthoClass]) -> float:
    own = [x for x in primes if x.start == i]
    if not own:
        return 0.0
    first = min(own, key=lambda x: (W._key(x.word), x.end))
    return _Coords(s, k, i).raw(_foot_chart(s, first))


def _wrap(v: float, length: float) -> float:
    return v - length * math.floor(v / length)


def gap_intervals(s: SurfaceModel, k: Grading, primes: Sequence[OrthoClass]) -> GapReport:
    """Gap of every prime class on its start component, with coverage.

    ``lo`` is reduced into [0, length); ``hi`` may exceed the length when
    an interval wraps.
    """
    k = Grading(k)
    coords = {i: _Coords(s, k, i, _origin(s, k, i, primes)) for i in range(s.n_boundaries)}
    out = []
    werr = 0.0
    for x in primes:
        c = coords[x.start]
        e1, e2 = _gap_chart(s, k, x)
        lo, hi = sorted((c(e1), c(e2)))
        foot = c(_foot_chart(s, x))
        shift = c.length * math.floor(lo / c.length)
        out.append(GapInterval(x, x.start, lo - shift, hi - shift, foot - shift))
        lam = gap_measure_traces(s.shapes[x.start], k[x.start], s.shapes[x.end], k[x.end], x.c).lam_k
        werr = max(werr, abs((hi - lo) - lam))
    lengths = {i: c.length for i, c in coords.items()}
    cover, overlap = {}, 0.0
    for i, L in lengths.items():
        iv = sorted((g.lo, g.hi) for g in out if g.boundary == i)
        covered, ov = _union(iv, L)
        cover[i] = covered / L if L > 0 else 0.0
        overlap = max(overlap, ov)
    return GapReport(out, lengths, cover, overlap, werr)


def _union(iv: list[tuple[float, float]], L: float) -> tuple[float, float]:
    """Covered length of intervals on a circle of length L, and the largest overlap."""
    pieces = []
    for lo, hi in iv:
        if hi <= L:
            pieces.append((lo, hi))
        else:
            pieces.append((lo, L))
            pieces.append((0.0, min(hi - L, L)))
    pieces.sort()
    total, overlap, end = 0.0, 0.0, -math.inf
    for lo, hi in pieces:
        if lo < end:
            overlap = max(overlap, min(end, hi) - lo)
        if hi > end:
            total += hi - max(lo, end)
            end = hi
    return total, overlap


def locate_gap(report: GapReport, boundary: int, s0: float) -> GapInterval | None:
    L = report.lengths[boundary]
    for g in report.intervals:
        if g.boundary != boundary:
            continue
        v = _wrap(s0 - g.lo, L)
        if v < g.width:
            return g
    return None


# ---------------------------------------------------------------------------
# ray tracing


def _down_crossing(a: np.ndarray, b: np.ndarray, thr) -> np.ndarray:
    """First t >= 0 where a cosh t + b sinh t falls below thr (inf if none)."""
    out = np.full(len(a), math.inf)
    # a cosh t + b sinh t = thr  <=>  (a+b) e^t + (a-b) e^-t = 2 thr
    p, q = a + b, a - b
    with np.errstate(invalid="ignore", divide="ignore"):
        disc = thr * thr - p * q
        sq = np.sqrt(np.maximum(disc, 0.0))
        for root in ((thr - sq) / p, (thr + sq) / p):
            t = np.log(root)
            after = a * np.cosh(t + 1e-9) + b * np.sinh(t + 1e-9)
            ok = (disc >= 0) & (root > 0) & (t >= 0) & (after < thr)
            out = np.where(ok & (t < out), t, out)
    return out


def _first_entry(alpha: np.ndarray, beta: np.ndarray, thr: np.ndarray) -> np.ndarray:
    """First t >= 0 with |alpha cosh t + beta sinh t| < thr."""
    # entering the band means crossing thr downwards or -thr upwards
    out = np.minimum(_down_crossing(alpha, beta, thr), _down_crossing(-alpha, -beta, thr))
    return np.where(np.abs(alpha) < thr, 0.0, out)


def _horo_entry(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """First t >= 0 with alpha cosh t + beta sinh t < 1."""
    return np.where(alpha < 1.0, 0.0, _down_crossing(alpha, beta, 1.0))


class RayTracer:
    """Walks orthorays through the side-pairing tiling.

    The ray is re-based in the frame of every tile it crosses, so the
    Minkowski coordinates stay of moderate size however long it runs.
    """

    def __init__(self, s: SurfaceModel, k: Grading, local_depth: int = 2, origins: dict | None = None):
        if not s.sides:
            raise NoDomainData(f"surface {s.name} has no fundamental-domain data")
        self.s = s
        self.k = Grading(k)
        self.loc = local_lifts(s, local_depth)
        origins = origins or {}
        self.coords = {i: _Coords(s, self.k, i, origins.get(i, 0.0)) for i in range(s.n_boundaries)}
        shapes = s.shapes
        self.geo_thr = np.array([math.sinh(collar_width(shapes[b], self.k[b])) for b in self.loc.geo_boundary])
        kk = np.array([self.k[b] for b in self.loc.cusp_boundary], dtype=float)
        self.horo = self.loc.horo * kk[:, None] if len(kk) else self.loc.horo

    def shoot(self, boundary: int, s0: float, budget: int = 10_000) -> RayOutcome:
        c = self.coords[boundary]
        z_chart, end_chart = c.start(s0)
        back = c.lift.chart.inverse()
        g, P, V = start_frame(self.s, back(z_chart), back(end_chart))
        n = 0
        for st in walk(self.s, g, P, V, budget=budget):
            n += 1
            hit = self._first_hit(st.word, st.P, st.V, boundary)
            if hit is not None and hit[0] <= st.exit:
                return RayOutcome(boundary, s0, True, hit[1], st.start + hit[0], n)
        return RayOutcome(boundary, s0, False, None, None, n)

    def _first_hit(self, g, P, V, boundary):
        loc = self.loc
        cands = []
        if len(loc.normals):
            ts = _first_entry(loc.normals @ (H.J * P), loc.normals @ (H.J * V), self.geo_thr)
            cands += [(t, "g", i) for i, t in enumerate(ts) if t < math.inf]
        if len(self.horo):
            ts = _horo_entry(-(self.horo @ (H.J * P)), -(self.horo @ (H.J * V)))
            cands += [(t, "c", i) for i, t in enumerate(ts) if t < math.inf]
        for t, kind, i in sorted(cands):
            if kind == "g":
                j, u = int(loc.geo_boundary[i]), loc.geo_words[i]
            else:
                j, u = int(loc.cusp_boundary[i]), loc.cusp_words[i]
            w = canonicalize(self.s, W.mul(g, u), boundary, j)
            if j == boundary and not w:
                continue  # the lift the ray starts from
            return t, (boundary, j, w)
        return None


def sample_rays(tracer: RayTracer, n: int, seed: int, boundaries: Sequence[int] | None = None, budget: int = 10_000):
    """Shoot n orthorays at uniformly random arclengths (seeded)."""
    rng = np.random.default_rng(seed)
    bs = list(boundaries) if boundaries is not None else list(range(tracer.s.n_boundaries))
    lens = np.array([tracer.coords[b].length for b in bs])
    probs = lens / lens.sum()
    which = rng.choice(len(bs), size=n, p=probs)
    pos = rng.random(n)
    return [tracer.shoot(bs[w], float(p * lens[w]), budget) for w, p in zip(which, pos)]


CSV_COLUMNS = ["boundary", "s0", "outcome", "class_word", "time"]


def rays_csv(outcomes: Sequence[RayOutcome]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_COLUMNS)
    for r in outcomes:
        word = "" if r.cls is None else f"{r.cls[1] + 1}:{W.to_str(r.cls[2])}"
        wr.writerow([r.boundary + 1, repr(r.s0), r.outcome, word, "" if r.time is None else repr(r.time)])
    return buf.getvalue()
