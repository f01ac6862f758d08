from fractions import Fraction

import numpy as np
import pytest

from sievecorr.coeff import Segment, make_preset, sieve_segment, zero_coeff
from sievecorr.corr import (
    correlation_all_shifts,
    correlation_direct,
    open_correlation_exact,
    symmetrized_correlation,
)
from sievecorr.errors import ShiftTooLarge, TableTooNarrow

from . import oracles


def _segments(g1, g2, N, amax):
    return sieve_segment(g1, N + 1, 2 * N), sieve_segment(g2, N + 1 - amax, 2 * N + amax)


def test_unit_divisor_pair_example():
    g = make_preset("unit", 2)
    f1, f2 = _segments(g, g, 4, 1)
    assert correlation_direct(f1, f2, 4, 1) == 8
    # f(5..8) = 1,2,1,2 and f(6..9) = 2,1,2,1, so C(-1) = 8 as well
    assert correlation_direct(f1, f2, 4, -1) == 8
    assert symmetrized_correlation(f1, f2, 4, 1) == 8
    assert open_correlation_exact(g, g, 4, 1) == 8


def test_constant_and_zero_examples():
    one = make_preset("moebius", 1)
    f1, f2 = _segments(one, one, 100, 7)
    assert correlation_direct(f1, f2, 100, 7) == 100
    assert symmetrized_correlation(f1, f2, 100, 7) == 100
    z = zero_coeff(5)
    f1, f2 = _segments(make_preset("unit", 5), z, 50, 3)
    assert correlation_direct(f1, f2, 50, 3) == 0
    assert open_correlation_exact(make_preset("unit", 5), z, 50, 3) == 0


def test_direct_matches_brute_force():
    g1, g2 = make_preset("moebius", 12), make_preset("unit", 9)
    f1, f2 = _segments(g1, g2, 60, 10)
    for a in range(-10, 11):
        assert correlation_direct(f1, f2, 60, a) == oracles.correlation(g1, g2, 60, a)


def test_shift_contract():
    g = make_preset("unit", 3)
    f1, f2 = _segments(g, g, 10, 9)
    with pytest.raises(ShiftTooLarge):
        correlation_direct(f1, f2, 10, 10)


def test_all_shifts_matches_direct():
    g1, g2 = make_preset("moebius", 40), make_preset("unit", 30)
    N, amax = 3000, 25
    f1, f2 = _segments(g1, g2, N, amax)
    table = correlation_all_shifts(f1, f2, N, amax)
    assert table.exact
    for a in table.shifts():
        assert table[a] == float(correlation_direct(f1, f2, N, a))
    with pytest.raises(TableTooNarrow):
        table[amax + 1]


def test_all_shifts_small_and_zero():
    g = make_preset("unit", 2)
    f1, f2 = _segments(g, g, 4, 1)
    assert correlation_all_shifts(f1, f2, 4, 1)[1] == pytest.approx(8, abs=1e-6)
    z = sieve_segment(zero_coeff(3), 1, 40)
    table = correlation_all_shifts(sieve_segment(g, 11, 20), z, 10, 5)
    assert np.all(table.values == 0)


def test_all_shifts_rational_values():
    g = make_preset("custom", 3, [Fraction(1, 3), Fraction(-1, 2), 1])
    f1, f2 = _segments(g, g, 200, 6)
    table = correlation_all_shifts(f1, f2, 200, 6)
    for a in table.shifts():
        assert table[a] == pytest.approx(float(correlation_direct(f1, f2, 200, a)), rel=1e-12)


def test_autocorrelation_near_symmetric():
    g = make_preset("unit", 20)
    N, amax = 500, 12
    f = sieve_segment(g, N + 1 - amax, 2 * N + amax)
    bound = float(f.max_abs) ** 2
    table = correlation_all_shifts(f, f, N, amax)
    for a in range(1, amax + 1):
        assert abs(table[a] - table[-a]) <= 2 * a * bound


def test_open_agrees_with_symmetrized_for_general_tables():
    g1 = make_preset("custom", 6, [1, Fraction(-2, 3), 0, 5, Fraction(1, 7), -1])
    g2 = make_preset("moebius", 10)
    N = 300
    f1, f2 = _segments(g1, g2, N, 20)
    for a in list(range(1, 21)) + [-3, -12]:
        assert open_correlation_exact(g1, g2, N, a) == symmetrized_correlation(f1, f2, N, a)


def test_open_with_trivial_first_factor():
    # g1 = mu on [1,1] leaves only the l d' = 1 branch
    g1, g2 = make_preset("moebius", 1), make_preset("unit", 7)
    N, a = 100, 5
    expected = Fraction(0)
    for q in range(1, 8):
        plus = sum(1 for n in range(N + 1, 2 * N + 1) if (n - a) % q == 0)
        minus = sum(1 for n in range(N + 1, 2 * N + 1) if (n + a) % q == 0)
        expected += Fraction(plus + minus, 2)
    assert open_correlation_exact(g1, g2, N, a) == expected


def test_segment_requires_coverage():
    seg = Segment(5, np.array([1, 2, 3], dtype=np.int64))
    with pytest.raises(ValueError):
        correlation_direct(seg, seg, 5, 0)
