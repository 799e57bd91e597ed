"""Acceptance criteria 1-10, one recorded pass/fail line each.

A criterion that is not met is reported as FAIL and marked xfail, so the
numbers stay visible without hiding the rest of the run.
"""
import math
from collections import defaultdict

import numpy as np
import pytest

from orthoprime import words as W
from orthoprime.collars import collar_width, core_boundary_length
from orthoprime.enumeration import EnumerationCutoff, enumerate_classes, gamma_word, is_prime, is_simple
from orthoprime.identity import basmajian_convergence_report, identity_report
from orthoprime.measures import (
    basmajian_measure,
    gap_measure_traces,
    hexagon_half_trace,
    m_ortholength,
    m_trace,
    p_poly,
)
from orthoprime.raysim import RayTracer, _origin, gap_intervals, sample_rays
from orthoprime.surfaces import BoundaryShape, Grading, parse_surface

CUSP = BoundaryShape.cusp()


def _series_ok(rep, bound):
    """Partial sums of the whole report: monotone and never above ``bound``."""
    lam = [t.lam_k for t in rep.terms]
    ps = np.cumsum(lam) / 2.0
    mono = bool(np.all(np.diff(ps) >= 0))
    return mono and (len(ps) == 0 or ps.max() <= bound + 1e-6), math.fsum(lam) / 2.0


def test_criterion_1_klm_identity(record):
    rep = identity_report(parse_surface("gamma2"), Grading((1, 2, 2)), EnumerationCutoff(20))
    ok_series, total = _series_ok(rep, 2.0)
    record("criterion 1", ok_series and abs(total - 2.0) <= 0.05,
           f"gamma2 (1,2,2) L=20: sum 2/(e^(g/2)+1) = {total:.6f}, monotone and bounded = {ok_series}")


def test_criterion_2_cusp_identity(record):
    rep = identity_report(parse_surface("modular_torus"), Grading((1,)), EnumerationCutoff(20))
    ok_series, total = _series_ok(rep, 1.0)
    record("criterion 2", ok_series and abs(total - 1.0) <= 0.05,
           f"modular_torus (1) L=20: sum = {total:.6f}, bounded = {ok_series}")


def _cyclic_key(word):
    w = W.cyclic_reduce(word)
    return min(min(W._key(r) for r in W.rotations(w)), min(W._key(r) for r in W.rotations(W.inverse(w))))


def test_criterion_3_mcshane(record):
    s, k = parse_surface("sym4"), Grading((1, 1, 1, 1))
    primes = enumerate_classes(s, k, EnumerationCutoff(16)).primes()
    distinct = all(x.start != x.end for x in primes)
    words = [gamma_word(s, k, x.start, x.end, x.word) for x in primes]
    simple = all(is_simple(s, w) for w in words)
    groups = defaultdict(list)
    for x, w in zip(primes, words):
        groups[_cyclic_key(w)].append(x)
    mult = sorted({len(v) for v in groups.values()})
    total = math.fsum(1.0 / (math.exp(v[0].gamma_length / 2.0) + 1.0) for v in groups.values())
    ok = distinct and simple and mult == [4] and abs(total - 0.5) <= 0.05
    record("criterion 3", ok, f"sym4 L=16: {len(primes)} primes, distinct cusps {distinct}, simple {simple}, "
           f"multiplicities {mult}, regrouped sum {total:.6f}")


@pytest.mark.parametrize("g", [2, 3])
def test_criterion_4_geodesic_boundary(record, g):
    rep = identity_report(parse_surface("pants:2,2,2"), Grading.uniform(g, 3), EnumerationCutoff(24))
    rhs = 2.0 / math.tanh(g)
    mono = all(all(b >= a for a, b in zip(ps, ps[1:])) for ps in (rep.series(i) for i in range(3)))
    below = all(b.sum <= rhs + 1e-9 for b in rep.boundaries)
    worst = max(b.residual for b in rep.boundaries)
    record(f"criterion 4-{g}", mono and below and worst < 0.05,
           f"pants(2,2,2) grading ({g},{g},{g}) L=24: rhs {rhs:.6f}, largest residual {worst:.6f}")


def test_criterion_5_basmajian(record):
    rep = basmajian_convergence_report(parse_surface("pants:2,2,2"), [2, 4, 8], EnumerationCutoff(16))
    devs = np.array([r.deviations for r in rep.rows])
    ok = len(rep.classes) == 10 and bool(np.all(np.diff(devs, axis=0) < 0))
    record("criterion 5", ok, f"pants(2,2,2) k=2,4,8: {len(rep.classes)} classes, "
           f"largest deviation per grade {[f'{d:.2e}' for d in devs.max(axis=1)]}")


def test_criterion_6_cross_validation(record):
    rng = np.random.default_rng(20240601)
    worst, n = 0.0, 0
    while n < 10_000:
        A, B = 1.0 + rng.exponential(2.0, 2)
        mu = rng.uniform(0.05, 5.0)
        c = hexagon_half_trace(A, B, mu)
        if c < 1.0:
            continue
        n += 1
        mt, mo = m_trace(A, B, c), m_ortholength(A, B, mu)
        worst = max(worst, abs(mt - mo) / max(1.0, abs(mo)))
    cusp = max(abs(gap_measure_traces(CUSP, 1, CUSP, 1, c).lam_k - 4.0 / (c + math.sqrt(c * c - 1) + 1))
               for c in np.linspace(1.0, 50.0, 200))
    # A = B = 1 through the trace form: p(1,1,c) = (c+1)^2 and the vanishing
    # geodesic length limit land on the same value
    tiny = BoundaryShape.geodesic(1e-7)
    special = max(max(abs(p_poly(1.0, 1.0, c) - (c + 1.0) ** 2) / (c + 1.0) ** 2,
                   abs(gap_measure_traces(tiny, 1, tiny, 1, c).lam_k - 4.0 / (c + math.sqrt(c * c - 1) + 1)))
               for c in np.linspace(1.0, 50.0, 200))
    record("criterion 6", worst <= 1e-9 and max(cusp, special) <= 1e-12,
           f"10^4 triples, largest |M_trace - M_ortho| {worst:.2e}; cusp specialisation error {max(cusp, special):.1e}")


def test_criterion_7_collars(record):
    worst = 0.0
    for ell in np.linspace(0.05, 6.0, 40):
        for k in range(1, 9):
            g = BoundaryShape.geodesic(float(ell))
            w = collar_width(g, k)
            worst = max(worst, abs(math.cosh(w) - 1.0 / math.tanh(k * ell / 2.0)) / math.cosh(w))
            worst = max(worst, abs(core_boundary_length(g, k) - ell * math.cosh(w)) / (ell * math.cosh(w)))
    cusp = all(core_boundary_length(CUSP, k) == 2.0 / k for k in range(1, 20))
    record("criterion 7", worst <= 1e-12 and cusp, f"largest relative error {worst:.1e}; cusp 2/k exact {cusp}")


def test_criterion_8_gaps(record):
    s, k = parse_surface("pants:2,2,2"), Grading((2, 2, 2))
    primes = enumerate_classes(s, k, EnumerationCutoff(16)).primes()
    rep = gap_intervals(s, k, primes)
    tracer = RayTracer(s, k, origins={i: _origin(s, k, i, primes) for i in range(3)})
    rays = sample_rays(tracer, 10_000, seed=11)
    exited = sum(o.exited for o in rays) / len(rays)
    cov = min(rep.coverage.values())
    ok = rep.max_overlap <= 1e-9 and rep.max_width_error <= 1e-6 and cov >= 0.95 and exited >= 0.99
    record("criterion 8", ok, f"overlap {rep.max_overlap:.1e}, width error {rep.max_width_error:.1e}, "
           f"coverage {cov:.4f}, exited {exited:.4f}")


EXHAUSTION = [
    ("gamma2", (1, 2, 2), 14),
    ("pants:2,2,2", (2, 2, 2), 16),
    ("sym4", (1, 1, 1, 1), 12),
    ("modular_torus", (1,), 14),
    ("pants:1,1.5,cusp", (1, 1, 1), 14),
]


def test_criterion_9_exhaustion(record):
    checked, bad = 0, []
    for name, kk, L in EXHAUSTION:
        s, k = parse_surface(name), Grading(kk)
        up = k.shifted(1)
        for x in enumerate_classes(s, k, EnumerationCutoff(L)):
            if all(d <= g for d, g in zip(x.depth, k)):
                checked += 1
                if not is_prime(s, x, up):
                    bad.append((name, x.key))
    record("criterion 9", not bad, f"{checked} classes of depth <= k over {len(EXHAUSTION)} surfaces, "
           f"{len(bad)} not prime at k+1")


def test_criterion_10_point_values(record):
    e3 = abs(gap_measure_traces(CUSP, 1, CUSP, 1, 3.0).lam_k - (2 - math.sqrt(2)))
    e5 = abs(gap_measure_traces(CUSP, 1, CUSP, 1, 5.0).lam_k - 4 / (6 + math.sqrt(24)))
    eb = abs(basmajian_measure(1.0) - 2 * math.log(1 / math.tanh(0.5)))
    record("criterion 10", max(e3, e5, eb) <= 1e-12, f"errors {e3:.1e}, {e5:.1e}, {eb:.1e}")
