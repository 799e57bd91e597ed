import math

import numpy as np
import pytest

from orthoprime import hyperboloid as H
from orthoprime import words as W
from orthoprime.enumeration import (
    CSV_COLUMNS,
    EnumerationCutoff,
    canonicalize,
    classes_csv,
    depth,
    describe,
    enumerate_classes,
    half_trace,
    is_prime,
    is_simple,
    ortho_segment,
    ortholength,
)
from orthoprime.hypcore import axis_or_fixed_point, standard_chart
from orthoprime.errors import InadmissibleGrade, InadmissibleGrading
from orthoprime.measures import hexagon_half_trace
from orthoprime.surfaces import Grading, parse_surface


@pytest.fixture(scope="module")
def pants():
    return parse_surface("pants:2,2,2")


@pytest.fixture(scope="module")
def gamma2():
    return parse_surface("gamma2")


def test_gamma2_short_class(gamma2):
    # A B^-2 has trace -6 in the orientation used here
    x = describe(gamma2, Grading((1, 2, 2)), 0, 1, ())
    assert x.c == pytest.approx(3.0, abs=1e-12)
    assert x.gamma_length == pytest.approx(2 * math.acosh(3), abs=1e-12)
    assert x.prime
    assert half_trace(gamma2, Grading((1, 1, 1)), 0, 1, ()) == pytest.approx(1.0)


def test_pants_seam(pants):
    k = Grading((1, 1, 1))
    assert describe(pants, k, 0, 1, ()).c == pytest.approx(math.cosh(1), abs=1e-12)
    mu = ortholength(pants, k, 0, 1, ())
    assert math.cosh(mu) == pytest.approx((math.cosh(1) + math.cosh(1) ** 2) / math.sinh(1) ** 2, rel=1e-10)
    # the same class graded (2,2): c from the hexagon bridge
    c2 = half_trace(pants, Grading((2, 2, 2)), 0, 1, ())
    assert c2 == pytest.approx(hexagon_half_trace(math.cosh(2), math.cosh(2), mu), rel=1e-10)


def test_orientation_pairing(pants):
    e = enumerate_classes(pants, Grading((2, 2, 2)), EnumerationCutoff(16))
    by_key = {x.key: x for x in e}
    for x in e:
        rev = (x.end, x.start, canonicalize(pants, W.inverse(x.word), x.end, x.start))
        y = by_key[rev]
        assert y.c == pytest.approx(x.c, rel=1e-9)
        assert y.ortholength == pytest.approx(x.ortholength, rel=1e-8)
        assert y.depth == x.depth and y.prime == x.prime


def test_sorted_and_deterministic(pants):
    k, cut = Grading((2, 2, 2)), EnumerationCutoff(14)
    a, b = enumerate_classes(pants, k, cut), enumerate_classes(pants, k, cut)
    assert [x.key for x in a] == [x.key for x in b]
    lens = [x.gamma_length for x in a]
    assert lens == sorted(lens)
    assert not a.possibly_incomplete
    assert classes_csv(a) == classes_csv(b)


def test_monotone_in_cutoff(gamma2):
    k = Grading((1, 2, 2))
    sets = [{x.key for x in enumerate_classes(gamma2, k, EnumerationCutoff(L))} for L in (8, 11, 14)]
    assert sets[0] <= sets[1] <= sets[2]
    assert len(sets[0]) < len(sets[2])


def test_primes_within_grades(pants):
    k = Grading((2, 2, 2))
    e = enumerate_classes(pants, k, EnumerationCutoff(16))
    assert e.primes()
    for x in e.primes():
        assert all(d <= g for d, g in zip(x.depth, k))
        assert x.c > 1
        assert is_prime(pants, x, k)
        assert depth(pants, x) == x.depth


def _min_distance_to_axis(s, x, axis_word, n=4001):
    # sample the arc on the hyperboloid and measure against the axis in its own chart
    z1, z2 = ortho_segment(s, x.start, x.end, x.word)
    P, Q = H.point(z1), H.point(z2)
    T = math.acosh(-H.mink(P, Q))
    chart = standard_chart(axis_or_fixed_point(s.eval_word(axis_word))).m
    best = math.inf
    for t in np.linspace(0.0, T, n)[1:-1]:
        z = chart(H.to_complex((math.sinh(T - t) * P + math.sinh(t) * Q) / math.sinh(T)))
        best = min(best, math.asinh(abs(z.real) / z.imag))
    return best


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_depth_winding(pants, j):
    # cuff 1 to itself around cuff 2: Y^j makes j - 1 full turns past the simple arc
    x = describe(pants, Grading((1, 1, 1)), 0, 0, (2,) * j)
    assert x.depth == (1, j, 1)
    d = _min_distance_to_axis(pants, x, (2,))
    ell = 2.0
    expect = max(1, math.ceil(2 * math.asinh(1 / math.sinh(d)) / ell))
    assert x.depth[1] == expect


def test_simple_seams_depth_one(pants):
    k = Grading((1, 1, 1))
    for i, j in ((0, 1), (1, 2), (2, 0), (0, 2)):
        assert describe(pants, k, i, j, ()).depth == (1, 1, 1)


def test_word_budget_flag(pants):
    e = enumerate_classes(pants, Grading((2, 2, 2)), EnumerationCutoff(16, word_max=5))
    assert e.possibly_incomplete


def test_inadmissible(pants):
    from dataclasses import replace

    from orthoprime.surfaces import BoundaryShape

    cone = BoundaryShape.cone(math.pi / 2)
    fake = replace(pants, boundaries=(replace(pants.boundaries[0], shape=cone),) + pants.boundaries[1:])
    with pytest.raises(InadmissibleGrading):
        enumerate_classes(fake, Grading((3, 1, 1)), EnumerationCutoff(8))
    # infinite grades belong to the Basmajian report, not to enumeration
    with pytest.raises(InadmissibleGrade):
        enumerate_classes(pants, Grading((math.inf, 1, 1)), EnumerationCutoff(8))


def test_is_simple(pants):
    assert is_simple(pants, (1,))
    assert is_simple(pants, (1, 2))
    assert not is_simple(pants, (1, -2))
    assert not is_simple(pants, (1, 1, 2))


def test_csv_columns(gamma2):
    e = enumerate_classes(gamma2, Grading((1, 2, 2)), EnumerationCutoff(8))
    lines = classes_csv(e).splitlines()
    assert lines[0].split(",") == CSV_COLUMNS
    assert len(lines) == len(e) + 1
    first = lines[1].split(",")
    assert first[0] in {"1", "2", "3"}
