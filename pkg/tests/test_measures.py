import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthoprime.errors import InadmissibleGrade, NegativeDiscriminant, NonpositiveLength, OutOfRange
from orthoprime.measures import (
    basmajian_measure,
    chebyshev_T,
    gap_measure_ortholength,
    gap_measure_traces,
    hexagon_half_trace,
    m_ortholength,
    m_trace,
    p_poly,
)
from orthoprime.surfaces import BoundaryShape

CUSP = BoundaryShape.cusp()
G = BoundaryShape.geodesic


def test_chebyshev():
    for x in (-1.0, -0.3, 0.2, 1.0, 1.7, 5.0):
        assert chebyshev_T(1, x) == x
    assert chebyshev_T(3, 0.5) == pytest.approx(-1.0, abs=1e-15)
    assert chebyshev_T(2, math.cosh(1)) == pytest.approx(math.cosh(2), rel=1e-14)
    with pytest.raises(OutOfRange):
        chebyshev_T(2, -1.5)
    with pytest.raises(ValueError):
        chebyshev_T(0, 1.0)


@given(st.integers(1, 8), st.floats(-1.0, 3.0))
def test_chebyshev_recurrence_matches_closed_form(k, x):
    closed = math.cos(k * math.acos(x)) if x <= 1 else math.cosh(k * math.acosh(x))
    assert chebyshev_T(k, x) == pytest.approx(closed, rel=1e-12, abs=1e-12)


def test_p_poly():
    for c in (1.0, 2.5, 10.0):
        assert p_poly(1, 1, c) == pytest.approx((c + 1) ** 2, rel=1e-15)
    ch = math.cosh(1)
    assert p_poly(ch, ch, ch) == pytest.approx(13.4918, abs=1e-4)
    args = (1.3, 2.1, 0.7)
    assert len({round(p_poly(*args[i:] + args[:i]), 12) for i in range(3)} | {round(p_poly(2.1, 1.3, 0.7), 12)}) == 1


def test_cusp_values():
    assert gap_measure_traces(CUSP, 1, CUSP, 1, 5).lam_k == pytest.approx(4 / (6 + math.sqrt(24)), abs=1e-12)
    assert gap_measure_traces(CUSP, 1, CUSP, 1, 3).lam_k == pytest.approx(2 - math.sqrt(2), abs=1e-12)
    assert gap_measure_traces(CUSP, 1, CUSP, 1, 1.0 + 1e-14).lam_k == pytest.approx(2.0, abs=1e-6)
    assert gap_measure_traces(CUSP, 1, CUSP, 1, 5).lam is None


@pytest.mark.parametrize("c", [1.0, 1.5, 3.0, 40.0])
def test_trace_form_cusp_specialisation(c):
    # at A = B = 1 the trace form degenerates to M = 1 and the rescaled
    # gap is the limit as the boundary length goes to zero
    assert m_trace(1.0, 1.0, c) == pytest.approx(1.0, abs=1e-15)
    target = 4 / (c + math.sqrt(c * c - 1) + 1)
    for ell in (1e-3, 1e-6, 1e-9):
        got = gap_measure_traces(G(ell), 1, G(ell), 1, c).lam_k
        assert got == pytest.approx(target, abs=max(ell * ell, 1e-14))


def test_seam_measure():
    A = B = math.cosh(2)
    mu = math.acosh((math.cosh(1) + math.cosh(1) ** 2) / math.sinh(1) ** 2)
    c = hexagon_half_trace(A, B, mu)
    assert c == pytest.approx(math.sinh(2) ** 2 * math.cosh(mu) - math.cosh(2) ** 2, rel=1e-14)
    assert c == pytest.approx(23.2213, abs=1e-4)
    t = gap_measure_traces(G(2), 2, G(2), 2, c)
    o = gap_measure_ortholength(A, B, mu)
    assert t.lam_k == pytest.approx(0.8061, abs=1e-4)
    assert t.lam_k == pytest.approx(o.lam_k, abs=1e-6)
    assert m_ortholength(A, B, mu) == pytest.approx(1.0764, abs=1e-4)


def test_case2_and_basmajian():
    o = gap_measure_ortholength(2.0, 3.0, 1.0, case=2)
    assert m_ortholength(2.0, 3.0, 1.0, case=2) == pytest.approx(1 / math.tanh(1), abs=1e-12)
    assert o.lam == pytest.approx(2 * math.log(1 / math.tanh(0.5)), abs=1e-12)
    assert basmajian_measure(1.0) == pytest.approx(2 * math.log(1 / math.tanh(0.5)), abs=1e-12)
    assert basmajian_measure(1.0) == pytest.approx(o.lam, abs=1e-12)
    assert gap_measure_ortholength(2.0, 3.0, 30.0, case=2).lam < 1e-12
    vals = [basmajian_measure(m) for m in (0.01, 0.1, 1, 5)]
    assert all(a > b > 0 for a, b in zip(vals, vals[1:]))
    with pytest.raises(NonpositiveLength):
        basmajian_measure(0.0)


def test_case3_is_limit_of_case1():
    for B, mu in ((2.5, 0.5), (1.3, 2.0)):
        big = gap_measure_ortholength(1e5, B, mu).lam
        assert gap_measure_ortholength(1.0, B, mu, case=3).lam == pytest.approx(big, rel=1e-6)


def test_impossible_triple():
    with pytest.raises(NegativeDiscriminant):
        gap_measure_ortholength(1.1, 1.1, 0.01)


@given(st.floats(1.01, 30.0), st.floats(1.01, 30.0), st.floats(0.05, 6.0))
@settings(max_examples=200)
def test_hexagon_bridge(A, B, mu):
    c = hexagon_half_trace(A, B, mu)
    if c < 1.0:
        return
    assert m_trace(A, B, c) == pytest.approx(m_ortholength(A, B, mu), abs=1e-9, rel=1e-9)


@pytest.mark.parametrize("mu", [1.0, 1.704913, 3.0])
def test_grade_limit_monotone(mu):
    a = b = math.cosh(1.0)
    target = basmajian_measure(mu)
    devs = [abs(gap_measure_ortholength(chebyshev_T(k, a), chebyshev_T(k, b), mu).lam_k - target)
            for k in (2, 4, 8, 16)]
    assert all(x > y for x, y in zip(devs, devs[1:]))
    assert devs[-1] < 1e-8


@pytest.mark.parametrize("end", [CUSP, G(1.0), BoundaryShape.cone(1.0)])
@pytest.mark.parametrize("c", [1.5, 3.0, 20.0])
def test_continuity_to_cusp_start(end, c):
    ref = gap_measure_traces(CUSP, 1, end, 1, c).lam_k
    assert gap_measure_traces(G(1e-4), 1, end, 1, c).lam_k == pytest.approx(ref, abs=1e-6)
    assert gap_measure_traces(BoundaryShape.cone(1e-4), 1, end, 1, c).lam_k == pytest.approx(ref, abs=1e-6)


@pytest.mark.parametrize("start,end,ks", [
    (CUSP, CUSP, (1, 1)),
    (G(1.0), G(2.0), (1, 3)),
    (G(0.5), CUSP, (2, 1)),
    (BoundaryShape.cone(1.0), G(1.0), (1, 1)),
    (CUSP, BoundaryShape.cone(0.5), (1, 2)),
])
def test_decreasing_in_c(start, end, ks):
    vals = [gap_measure_traces(start, ks[0], end, ks[1], c).lam_k for c in (1.1, 2, 4, 10, 100)]
    assert all(a > b > 0 for a, b in zip(vals, vals[1:]))


def test_inadmissible():
    with pytest.raises(InadmissibleGrade):
        gap_measure_traces(BoundaryShape.cone(1.0), 4, CUSP, 1, 3)
    with pytest.raises(InadmissibleGrade):
        gap_measure_traces(G(1.0), math.inf, CUSP, 1, 3)
