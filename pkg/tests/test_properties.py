"""Randomised invariants over small instances."""

import csv
import io
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from sievecorr import arith
from sievecorr.coeff import make_preset, sieve_segment
from sievecorr.corr import (
    correlation_all_shifts,
    correlation_direct,
    decompose_correlation,
    kloosterman_bilinear,
    open_correlation_exact,
    symmetrized_correlation,
)
from sievecorr.integrals import (
    integral_segments,
    resummation_identity,
    s_sum_identity,
    selberg_integral,
    symmetry_integral,
    w_comb_identity,
    weight_W,
)
from sievecorr.lab.records import RunRecord, csv_text

from . import oracles

small_fracs = st.fractions(min_value=-3, max_value=3, max_denominator=6)
rationals = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**4))


def tables(max_len=12):
    return st.lists(small_fracs, min_size=1, max_size=max_len).map(
        lambda vals: make_preset("custom", len(vals), vals)
    )


@given(rationals)
def test_b1_odd_and_periodic(x):
    assert arith.b1(-x) == -arith.b1(x)
    assert arith.b1(x + 1) == arith.b1(x)
    assert abs(arith.b1(x)) <= Fraction(1, 2)


@given(st.integers(-200, 200), st.integers(0, 200), st.integers(1, 40), st.integers(-50, 50))
def test_count_decomposition_exact(m1, span, q, r):
    m2 = m1 + span
    brute = sum(1 for m in range(m1 + 1, m2 + 1) if (m - r) % q == 0)
    assert arith.count_in_ap(m1, m2, q, r) == brute
    assert arith.count_b1_decomposition(m1, m2, q, r).total == brute


@given(st.integers(-10**9, 10**9), st.integers(1, 10**6))
def test_mod_inverse_property(d, q):
    if arith.gcd(d, q) == 1:
        assert (d * arith.mod_inverse(d, q) - 1) % q == 0


@given(tables(), st.integers(1, 300), st.integers(0, 60))
def test_sieve_matches_divisor_sum(g, A, span):
    seg = sieve_segment(g, A, A + span, chunk=17)
    assert seg.values == [oracles.f_value(g, n) for n in range(A, A + span + 1)]


@settings(max_examples=40, deadline=None)
@given(tables(), tables(), st.integers(10, 150), st.data())
def test_open_equals_symmetrized(g1, g2, N, data):
    a = data.draw(st.integers(1, N - 1))
    f1 = sieve_segment(g1, N + 1, 2 * N)
    f2 = sieve_segment(g2, N + 1 - a, 2 * N + a)
    assert open_correlation_exact(g1, g2, N, a) == symmetrized_correlation(f1, f2, N, a)


@settings(max_examples=40, deadline=None)
@given(tables(), tables(), st.integers(10, 150), st.data())
def test_breakdown_identity_random(g1, g2, N, data):
    a = data.draw(st.integers(1, N - 1))
    assert decompose_correlation(g1, g2, N, a).identity_gap() == 0


@settings(max_examples=30, deadline=None)
@given(tables(8), tables(8), st.integers(20, 200), st.integers(0, 9))
def test_all_shifts_equal_direct(g1, g2, N, amax):
    f1 = sieve_segment(g1, N + 1, 2 * N)
    f2 = sieve_segment(g2, N + 1 - amax, 2 * N + amax)
    table = correlation_all_shifts(f1, f2, N, amax)
    for a in table.shifts():
        exact = float(correlation_direct(f1, f2, N, a))
        assert abs(table[a] - exact) <= 1e-9 * max(1.0, abs(exact))


@given(st.integers(1, 120), st.integers(1, 500))
def test_w_comb(h, q):
    lhs, rhs = w_comb_identity(q, h)
    assert lhs == rhs


@given(st.integers(1, 300), st.data())
def test_s_sum(h, data):
    ell = data.draw(st.integers(1, h))
    lhs, exact_form = s_sum_identity(ell, h)
    assert lhs == exact_form
    assert abs(lhs - Fraction(h * h, ell)) <= 2 * h


@given(st.integers(1, 200))
def test_w_total_mass_zero(h):
    assert sum(weight_W(a, h) for a in range(-2 * h, 2 * h + 1)) == 0


@settings(max_examples=30, deadline=None)
@given(tables(10), tables(10))
def test_resummation_random(g1, g2):
    lhs, rhs = resummation_identity(g1, g2)
    assert lhs == rhs


@settings(max_examples=15, deadline=None)
@given(tables(6), tables(6), st.integers(4, 30), st.data())
def test_integrals_against_brute(g1, g2, N, data):
    h = data.draw(st.integers(1, N // 2))
    f1, f2 = integral_segments(g1, g2, N, h)
    assert selberg_integral(f1, f2, g1, g2, N, h) == oracles.selberg(g1, g2, N, h)
    assert symmetry_integral(f1, f2, N, h) == oracles.symmetry(g1, g2, N, h)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(1, 50), st.randoms(use_true_random=False))
def test_bilinear_trivial_bound(D, Q, k, rnd):
    g1 = make_preset("custom", 2 * D, [0] * D + [rnd.choice([-1, 1]) for _ in range(D)])
    g2 = make_preset("custom", 2 * Q, [0] * Q + [rnd.choice([-1, 1]) for _ in range(Q)])
    v = kloosterman_bilinear(g1, g2, D, Q, k)
    assert abs(v) <= v.trivial_bound + 1e-9


@given(rationals, st.floats(allow_nan=False, allow_infinity=False))
def test_csv_rendering_round_trips(x, y):
    rec = RunRecord(N=10, theta=0.2, lambda1=0.3, lambda2=0.4, delta=0.01, preset1="unit",
                    preset2="unit", seed=0, h=1, D=2, Q=2, J_exact=x, J_diff=y)
    row = next(csv.DictReader(io.StringIO(csv_text([rec]))))
    assert Fraction(row["J_exact"]) == x
    assert float(row["J_diff"]) == y
