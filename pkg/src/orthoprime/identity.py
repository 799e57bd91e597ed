"""Identity sums over prime orthogeodesics, per boundary component.

Each prime class contributes its gap measure lambda_k to the boundary it
starts on; the sum over a component should close to the length of the
matching concave-core boundary. Sums run in ascending gamma-length order
so that the partial-sum series is meaningful as a convergence record.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import words as W
from .collars import core_boundary_length
from .enumeration import EnumerationCutoff, OrthoClass, enumerate_classes
from .errors import InadmissibleGrading, NonGeodesicBoundary
from .hypcore import INF
from .measures import basmajian_measure, gap_measure_ortholength, gap_measure_traces, graded_half_trace
from .surfaces import Grading, SurfaceModel, admissibility_check


class _Neumaier:
    """Running sum with a compensation term, for monotone partial sums."""

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> float:
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t
        return self.s + self.c


@dataclass(frozen=True)
class Term:
    boundary: int
    end: int
    word: str
    gamma_length: float
    lam_k: float
    partial_sum: float


@dataclass(frozen=True)
class BoundaryRecord:
    index: int
    kind: str
    rhs: float
    sum: float
    residual: float
    n_terms: int
    tail_estimate: float


@dataclass
class IdentityReport:
    surface: str
    grading: Grading
    cutoff: EnumerationCutoff
    boundaries: list[BoundaryRecord]
    terms: list[Term]
    possibly_incomplete: bool
    model_type: str
    warnings: list[str] = field(default_factory=list)
    ambiguous: list[tuple] = field(default_factory=list)

    @property
    def total(self) -> float:
        return math.fsum(b.sum for b in self.boundaries)

    @property
    def rhs_total(self) -> float:
        return math.fsum(b.rhs for b in self.boundaries)

    def series(self, boundary: int | None = None) -> list[float]:
        return [t.partial_sum for t in self.terms if boundary is None or t.boundary == boundary]

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "grading": _grading_json(self.grading),
            "cutoff": {"gamma_max": self.cutoff.gamma_max, "word_max": self.cutoff.word_max},
            "boundaries": [
                {
                    "index": b.index + 1,
                    "kind": b.kind,
                    "rhs": b.rhs,
                    "sum": b.sum,
                    "residual": b.residual,
                    "n_terms": b.n_terms,
                    "tail_estimate": b.tail_estimate,
                }
                for b in self.boundaries
            ],
            "series": [
                {"gamma_length": t.gamma_length, "partial_sum": t.partial_sum, "boundary": t.boundary + 1}
                for t in self.terms
            ],
            "flags": {
                "possibly_incomplete": self.possibly_incomplete,
                "model_type": self.model_type,
                "warnings": list(self.warnings),
                "ambiguous": [[i + 1, j + 1, W.to_str(w)] for i, j, w in self.ambiguous],
            },
            "total": self.total,
            "rhs_total": self.rhs_total,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["boundary", "end", "word", "gamma_length", "lambda_k", "partial_sum"])
        for t in self.terms:
            out.writerow([t.boundary + 1, t.end + 1, t.word, repr(t.gamma_length), repr(t.lam_k), repr(t.partial_sum)])
        return buf.getvalue()


def _grading_json(k: Grading) -> list:
    return ["inf" if g == INF else int(g) for g in k]


def class_measure(s: SurfaceModel, k: Grading, x: OrthoClass) -> float:
    sh = s.shapes
    return gap_measure_traces(sh[x.start], k[x.start], sh[x.end], k[x.end], x.c).lam_k


def _check(s: SurfaceModel, k: Grading):
    adm = admissibility_check(s, k)
    if not adm.ok:
        raise InadmissibleGrading("; ".join(adm.violations))
    return adm


def identity_report(
    s: SurfaceModel,
    k: Grading,
    cut: EnumerationCutoff,
    local_depth: int = 2,
    threads: int = 1,
    primes: Sequence[OrthoClass] | None = None,
) -> IdentityReport:
    """Per-boundary identity sums over the primes with gamma-length <= cut.

    ``primes`` may be passed to reuse an enumeration already done for
    (s, k, cut); it must then be sorted by gamma-length.
    """
    k = Grading(k)
    adm = _check(s, k)
    warnings = list(adm.warnings)
    if primes is None:
        en = enumerate_classes(s, k, cut, local_depth=local_depth)
        primes, incomplete, amb = en.primes(), en.possibly_incomplete, list(en.ambiguous)
    else:
        primes, incomplete, amb = list(primes), False, []
    if amb:
        warnings.append(f"{len(amb)} classes sit within tolerance of a threshold")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            lams = list(ex.map(lambda x: class_measure(s, k, x), primes))
    else:
        lams = [class_measure(s, k, x) for x in primes]

    acc = [_Neumaier() for _ in range(s.n_boundaries)]
    per: list[list[float]] = [[] for _ in range(s.n_boundaries)]
    terms = []
    for x, lam in zip(primes, lams):
        ps = acc[x.start].add(lam)
        per[x.start].append(lam)
        terms.append(Term(x.start, x.end, x.word_str, x.gamma_length, lam, ps))

    records = []
    for i, shape in enumerate(s.shapes):
        rhs = core_boundary_length(shape, k[i])
        total = math.fsum(per[i])
        records.append(BoundaryRecord(i, shape.kind, rhs, total, rhs - total, len(per[i]), _tail(per[i], primes, i)))
    return IdentityReport(s.name, k, cut, records, terms, incomplete, adm.model_type, warnings, amb)


def _tail(lams: list[float], primes: Sequence[OrthoClass], i: int) -> float:
    """Crude tail size: terms in the last unit of gamma-length times the largest of them."""
    own = [x.gamma_length for x in primes if x.start == i]
    if not own:
        return 0.0
    top = own[-1]
    frontier = [lam for g, lam in zip(own, lams) if g > top - 1.0]
    return len(frontier) * max(frontier)


# ---------------------------------------------------------------------------
# grade limit


@dataclass(frozen=True)
class BasmajianRow:
    grade: int
    rhs: tuple[float, ...]
    limit: tuple[float, ...]
    residual: tuple[float, ...]
    deviations: tuple[float, ...]  # one per class in BasmajianReport.classes


@dataclass
class BasmajianReport:
    surface: str
    classes: list[tuple[int, int, str, float]]  # (start, end, word, ortholength)
    rows: list[BasmajianRow]
    mu_max: float = math.inf  # ortholength window shared by all grades

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "mu_max": self.mu_max,
            "classes": [{"start": i + 1, "end": j + 1, "word": w, "ortholength": mu} for i, j, w, mu in self.classes],
            "rows": [
                {
                    "grade": r.grade,
                    "rhs": list(r.rhs),
                    "limit": list(r.limit),
                    "residual": list(r.residual),
                    "deviations": list(r.deviations),
                }
                for r in self.rows
            ],
        }


def basmajian_convergence_report(
    s: SurfaceModel,
    grades: Sequence[int],
    cut: EnumerationCutoff,
    n_classes: int = 10,
    local_depth: int = 2,
) -> BasmajianReport:
    """Residuals and per-class deviations from the orthospectrum measure as the grade grows.

    Gamma-lengths grow with the grade while ortholengths do not, so every
    grade is summed over the same ortholength window: the largest mu that
    the gamma cutoff guarantees for every boundary pair at the first grade.
    """
    if any(sh.kind != "geodesic" for sh in s.shapes):
        raise NonGeodesicBoundary("the grade limit needs every boundary to be geodesic")
    grades = [int(g) for g in grades]
    if not grades or any(b <= a for a, b in zip(grades, grades[1:])):
        raise ValueError("grades must be a non-empty increasing list")
    n = s.n_boundaries
    pairs = [(a, b) for a in range(n) for b in range(n)]

    def halves(g):
        return [graded_half_trace(sh, g) for sh in s.shapes]

    h0 = halves(grades[0])
    c_max = math.cosh(cut.gamma_max / 2.0)
    mu_max = min(
        math.acosh((c_max + h0[a] * h0[b]) / math.sqrt((h0[a] ** 2 - 1.0) * (h0[b] ** 2 - 1.0)))
        for a, b in pairs
    )

    rows, classes = [], None
    for g in grades:
        k = Grading.uniform(g, n)
        h = halves(g)
        c_top = max(
            math.sqrt((h[a] ** 2 - 1.0) * (h[b] ** 2 - 1.0)) * math.cosh(mu_max) - h[a] * h[b] for a, b in pairs
        )
        sub = EnumerationCutoff(2.0 * math.acosh(max(c_top, 1.0)) + 1e-9, cut.word_max, cut.margin)
        en = enumerate_classes(s, k, sub, local_depth=local_depth)
        if classes is None:
            window = [x for x in en.classes if x.ortholength <= mu_max]
            chosen = sorted(window, key=lambda x: (x.ortholength, x.start, x.end, W._key(x.word)))[:n_classes]
            classes = [(x.start, x.end, x.word_str, x.ortholength) for x in chosen]
        primes = [x for x in en.primes() if x.ortholength <= mu_max]
        rep = identity_report(s, k, sub, primes=primes)
        devs = []
        for i, j, _, mu in classes:
            lam = gap_measure_ortholength(h[i], h[j], mu).lam_k
            devs.append(abs(lam - basmajian_measure(mu)))
        rows.append(BasmajianRow(
            g,
            tuple(r.rhs for r in rep.boundaries),
            tuple(sh.value for sh in s.shapes),
            tuple(r.residual for r in rep.boundaries),
            tuple(devs),
        ))
    return BasmajianReport(s.name, classes, rows, mu_max)


# ---------------------------------------------------------------------------
# counting


@dataclass
class CountingReport:
    surface: str
    grading: Grading
    grid: list[float]
    counts: list[int]
    model_type: str
    slope: float | None  # d log N / d log L (euclidean) or d log N / d L (otherwise)
    possibly_incomplete: bool

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "grading": _grading_json(self.grading),
            "grid": list(self.grid),
            "counts": list(self.counts),
            "model_type": self.model_type,
            "fit": "log-log" if self.model_type == "euclidean" else "log-linear",
            "slope": self.slope,
            "flags": {"possibly_incomplete": self.possibly_incomplete},
        }


def counting_report(
    s: SurfaceModel,
    k: Grading,
    grid: Sequence[float],
    word_max: int = 4096,
    local_depth: int = 2,
) -> CountingReport:
    k = Grading(k)
    adm = _check(s, k)
    grid = sorted(float(L) for L in grid)
    if not grid or grid[0] <= 0:
        raise ValueError("grid must hold positive lengths")
    en = enumerate_classes(s, k, EnumerationCutoff(grid[-1], word_max), local_depth=local_depth)
    lengths = np.array([x.gamma_length for x in en.primes()])
    counts = [int(np.count_nonzero(lengths <= L)) for L in grid]
    xs = np.array(grid)
    ys = np.array(counts, dtype=float)
    keep = ys > 0
    slope = None
    if keep.sum() >= 2:
        x = np.log(xs[keep]) if adm.model_type == "euclidean" else xs[keep]
        slope = float(np.polyfit(x, np.log(ys[keep]), 1)[0])
    return CountingReport(s.name, k, grid, counts, adm.model_type, slope, en.possibly_incomplete)


__all__ = [
    "Term",
    "BoundaryRecord",
    "IdentityReport",
    "identity_report",
    "class_measure",
    "BasmajianRow",
    "BasmajianReport",
    "basmajian_convergence_report",
    "CountingReport",
    "counting_report",
]
