from fractions import Fraction

import pytest

from sievecorr.coeff import DyadicSupport, make_preset, zero_coeff
from sievecorr.corr import (
    bernoulli_remainder,
    bernoulli_remainder_blockwise,
    decompose_correlation,
    floor_main_term,
    integer_point_correction,
    smooth_main_term,
)
from sievecorr.errors import NonDyadicSupport

from . import oracles


def singleton(d: int, bound: int | None = None):
    bound = bound or d
    return make_preset("custom", bound, [1 if k == d else 0 for k in range(1, bound + 1)])


def test_smooth_main_examples():
    one = make_preset("moebius", 1)
    assert smooth_main_term(one, one, 37, 5) == 37
    u = make_preset("unit", 2)
    assert smooth_main_term(u, u, 4, 1) == 8
    assert smooth_main_term(u, u, 10, 2) == 25


def test_floor_main_examples():
    one = make_preset("moebius", 1)
    assert floor_main_term(one, one, 10, 3) == 10
    u = make_preset("unit", 2)
    assert floor_main_term(u, u, 4, 1) == 8


def test_main_terms_match_double_loop():
    g1 = make_preset("moebius", 30)
    g2 = make_preset("custom", 12, [Fraction(k % 5 - 2, k) for k in range(1, 13)])
    for a in (1, 6, -10, 12):
        ref = oracles.breakdown(g1, g2, 500, a)
        assert smooth_main_term(g1, g2, 500, a) == ref["smooth"]
        assert floor_main_term(g1, g2, 500, a) == ref["floor_main"]


def test_floor_and_smooth_differ_by_at_most_abs_mass():
    g1, g2 = make_preset("unit", 20), make_preset("moebius", 25)
    mass = g1.abs_sum * g2.abs_sum
    for a in range(1, 15):
        diff = floor_main_term(g1, g2, 1000, a) - smooth_main_term(g1, g2, 1000, a)
        assert abs(diff) <= mass


def test_remainder_small_examples():
    two = DyadicSupport(Fraction(1), singleton(2))
    assert bernoulli_remainder(two, DyadicSupport(Fraction(1), singleton(2)), 10, 1) == 0
    assert bernoulli_remainder(two, DyadicSupport(Fraction(1), zero_coeff(2)), 10, 1) == 0


def test_singleton_closed_form():
    # d = 2, q = 3: the inverse of 2 mod 3 is 2, M1 = [10/2] = 5, M2 = [20/2] = 10
    g1, g2 = singleton(2), singleton(3, 4)
    b = oracles.b1
    expected = -(b(Fraction(10 - 2, 3)) - b(Fraction(5 - 2, 3))) - (
        b(Fraction(10 + 2, 3)) - b(Fraction(5 + 2, 3))
    )
    assert expected == Fraction(-1, 3)
    assert bernoulli_remainder(g1, g2, 10, 1) == expected
    br = decompose_correlation(g1, g2, 10, 1)
    assert br.symmetrized == Fraction(3, 2)
    assert br.floor_main == Fraction(5, 3)
    assert br.integer_correction == 0
    assert br.identity_gap() == 0


def test_remainder_matches_double_loop():
    g1 = make_preset("moebius", 64).restrict(32, 64)
    g2 = make_preset("unit", 32).restrict(16, 32)
    for a in (1, 4, 9, 30):
        assert bernoulli_remainder(g1, g2, 5000, a) == oracles.remainder(g1, g2, 5000, a)


def test_nondyadic_support_rejected():
    with pytest.raises(NonDyadicSupport):
        bernoulli_remainder(make_preset("unit", 10), make_preset("unit", 4).restrict(2, 4), 100, 1)


def test_blockwise_equals_whole_grid():
    g1, g2 = make_preset("moebius", 40), make_preset("unit", 30)
    for a in (1, 6):
        whole = oracles.remainder(g1, g2, 700, a)
        assert bernoulli_remainder_blockwise(g1, g2, 700, a) == whole


def test_integer_point_correction_generic_zero():
    g1 = make_preset("moebius", 64).restrict(32, 64)
    assert integer_point_correction(g1, DyadicSupport(Fraction(1, 2), zero_coeff(1)), 500, 3) == 0


def test_integer_point_correction_constructed_hit():
    # d = 1, q = 5: r = a mod 5, M1 = N, M2 = 2N; scan N for an endpoint hit
    g1 = make_preset("moebius", 1)
    g2 = singleton(5, 8)
    hits = []
    for N in range(2, 101):
        c = integer_point_correction(g1, g2, N, 1)
        assert c == oracles.breakdown(g1, g2, N, 1)["corr"]
        if c:
            hits.append((N, c))
    assert hits and all(abs(c) == Fraction(1, 4) for _, c in hits)
    assert hits[0] == (2, Fraction(1, 4))  # M2 = 4 = -1 (mod 5)


@pytest.mark.parametrize("kind", ["unit", "moebius", "moebius_sq"])
def test_breakdown_identity(kind):
    g = make_preset(kind, 60)
    for a in (1, 2, 12, -7, 60):
        br = decompose_correlation(g, g, 1000, a)
        assert br.identity_gap() == 0
        assert br.exact_residual == br.symmetrized - br.smooth_main
        assert br.direct == oracles.correlation(g, g, 1000, a)


def test_breakdown_with_zero_factor():
    br = decompose_correlation(make_preset("unit", 8), zero_coeff(8), 200, 3)
    assert br.direct == br.symmetrized == br.smooth_main == br.floor_main == 0
    assert br.bernoulli_R == br.integer_correction == br.exact_residual == 0


def test_breakdown_accepts_dyadic_wrappers():
    g1 = DyadicSupport(Fraction(16), make_preset("moebius", 32).restrict(16, 32))
    g2 = DyadicSupport(Fraction(8), make_preset("unit", 16).restrict(8, 16))
    br = decompose_correlation(g1, g2, 4000, 6)
    assert br.identity_gap() == 0
    assert br.bernoulli_R == bernoulli_remainder(g1, g2, 4000, 6)
