import math
from fractions import Fraction

import pytest

from sievecorr.coeff import make_preset
from sievecorr.corr import (
    bernoulli_remainder,
    cotangent_remainder,
    fourier_truncated_remainder,
    sigma_components,
)


def singleton(d: int, bound: int):
    return make_preset("custom", bound, [1 if k == d else 0 for k in range(1, bound + 1)])


def test_truncation_empty_when_cutoff_zero():
    # l d' q' = 6 is below N^(1-delta), so every cell has J = 0
    assert fourier_truncated_remainder(singleton(2, 2), singleton(3, 4), 1000, 1, 0.01) == 0.0


def test_truncation_singleton_by_hand():
    # d = 2, q = 3, N = 4, a = 1: J = [6 / 4^0.6] = 2, M1 = 2, M2 = 4, r = 2
    N, delta = 4, 0.4
    assert math.floor(6 / N ** (1 - delta)) == 2
    expected = 2 / math.pi * sum(
        (math.sin(2 * math.pi * 4 * j / 3) - math.sin(2 * math.pi * 2 * j / 3))
        / j
        * math.cos(2 * math.pi * 2 * j / 3)
        for j in (1, 2)
    )
    got = fourier_truncated_remainder(singleton(2, 2), singleton(3, 4), N, 1, delta)
    assert got == pytest.approx(expected, abs=1e-12)


def test_cotangent_expansion_is_exact():
    g1 = make_preset("unit", 128).restrict(64, 128)
    g2 = make_preset("moebius", 256).restrict(128, 256)
    for a in (1, 6, 40):
        exact = float(bernoulli_remainder(g1, g2, 10_000, a))
        assert cotangent_remainder(g1, g2, 10_000, a) == pytest.approx(exact, abs=1e-9)


def test_truncation_error_report_improves():
    g1 = make_preset("unit", 128).restrict(64, 128)
    g2 = make_preset("moebius", 256).restrict(128, 256)
    N, a = 10_000, 6
    exact = float(bernoulli_remainder(g1, g2, N, a))
    errors = {
        J: abs(fourier_truncated_remainder(g1, g2, N, a, 0.01, J_fixed=J) - exact)
        for J in (1, 4, 16, 64, 256, 512)
    }
    print("truncation error by J:", {J: round(e, 4) for J, e in errors.items()})
    # the sawtooth series converges but not monotonically; only the overall gain is asserted
    assert errors[512] < errors[1] / 10
    assert min(errors[256], errors[512]) < min(errors[1], errors[4])


def test_truncation_rejects_bad_delta():
    with pytest.raises(ValueError):
        fourier_truncated_remainder(singleton(2, 2), singleton(3, 4), 100, 1, 0.5)


def test_sigma_empty_range():
    s = sigma_components(singleton(2, 2), singleton(3, 4), 1000, 1, 0.01, 1)
    assert (s.sigma, s.sigma0, s.sigma1, s.sigma2) == (0.0, 0.0, 0.0, 0.0)


def _sigma_by_hand(d, q, N, a, delta, c, D, Q):
    ell = math.gcd(d, q)
    dp, qp = d // ell, q // ell
    r = (pow(dp, -1, qp) * (a // ell)) % qp
    x = Fraction(c * N, ell * dp)
    fx = x - math.floor(x)
    jmax = math.floor(4 * Q * D / (ell * N ** (1 - delta)))
    parts = [0.0, 0.0, 0.0, 0.0]
    for j in range(1, jmax + 1):
        t = 2 * math.pi * j / qp
        w = math.cos(2 * math.pi * j * r / qp) / j
        xt = float(x) * t
        parts[0] += w * math.sin(math.floor(x) * t)
        parts[1] += w * math.sin(xt)
        parts[2] += w * (1 - math.cos(float(fx) * t)) * math.sin(xt)
        parts[3] += w * math.sin(float(fx) * t) * math.cos(xt)
    return parts


@pytest.mark.parametrize("c", [1, 2])
def test_sigma_singleton_by_hand(c):
    # d = 5 in ]4, 8], q = 9 in ]8, 16]
    N, a, delta = 10, 1, 0.4
    s = sigma_components(singleton(5, 8), singleton(9, 16), N, a, delta, c)
    ref = _sigma_by_hand(5, 9, N, a, delta, c, 4, 8)
    for got, want in zip((s.sigma, s.sigma0, s.sigma1, s.sigma2), ref):
        assert got == pytest.approx(want, abs=1e-9)
    assert abs(s.gap) < 1e-9


def test_sigma_identity_both_scales():
    g1 = make_preset("unit", 512).restrict(256, 512)
    g2 = make_preset("moebius", 1024).restrict(512, 1024)
    s1 = sigma_components(g1, g2, 10_000, 6, 0.01, 1)
    s2 = sigma_components(g1, g2, 10_000, 6, 0.01, 2)
    assert abs(s1.gap) < 1e-6 * max(1.0, abs(s1.sigma))
    assert abs(s2.gap) < 1e-6 * max(1.0, abs(s2.sigma))
    assert s1.sigma != s2.sigma
