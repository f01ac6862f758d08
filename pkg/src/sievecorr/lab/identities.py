"""Reduced-scope runs of every exact identity, for the ``identities`` command."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..arith import b1, b1_fourier, count_b1_decomposition, count_in_ap
from ..coeff import make_preset, sieve_segment
from ..corr import decompose_correlation, open_correlation_exact, symmetrized_correlation
from ..integrals import (
    integral_quadrature_oracle,
    integral_segments,
    resummation_identity,
    s_sum_identity,
    selberg_integral,
    symmetry_integral,
    w_comb_identity,
    weight_W,
    weight_W_quadrature,
)

# midpoint error is at most 8h/steps (two sign jumps), so this meets 4h * 1e-5
QUADRATURE_STEPS = 200_000


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _opening() -> tuple[int, int]:
    cases = bad = 0
    N = 1000
    for kind in ("unit", "moebius"):
        g = make_preset(kind, int(N**0.5))
        f1 = sieve_segment(g, N + 1, 2 * N)
        f2 = sieve_segment(g, N + 1 - 10, 2 * N + 10)
        for a in range(1, 11):
            cases += 1
            bad += open_correlation_exact(g, g, N, a) != symmetrized_correlation(f1, f2, N, a)
    return cases, bad


def _decomposition() -> tuple[int, int]:
    cases = bad = 0
    for D, Q in [(8, 16), (32, 32)]:
        g1 = make_preset("moebius", 2 * D).restrict(D + 1, 2 * D)
        g2 = make_preset("unit", 2 * Q).restrict(Q + 1, 2 * Q)
        for a in range(1, 9):
            cases += 1
            bad += decompose_correlation(g1, g2, 2000, a).identity_gap() != 0
    return cases, bad


def _bernoulli_fourier() -> tuple[int, int]:
    cases = bad = 0
    for q in range(1, 61):
        for n in range(q):
            cases += 1
            bad += abs(b1_fourier(n, q) - float(b1(Fraction(n, q)))) > 1e-9
    return cases, bad


def _ap_count() -> tuple[int, int]:
    cases = bad = 0
    for m1, m2, q in itertools.product(range(-30, 31, 7), range(-30, 31, 5), range(1, 13)):
        for r in range(q):
            cases += 1
            bad += count_b1_decomposition(m1, m2, q, r).total != count_in_ap(m1, m2, q, r)
    return cases, bad


def _integrals() -> tuple[int, int]:
    cases = bad = 0
    for k1, k2 in [("unit", "unit"), ("moebius", "unit")]:
        N, h = 300, 7
        g1, g2 = make_preset(k1, 20), make_preset(k2, 20)
        f1, f2 = integral_segments(g1, g2, N, h)
        J = float(selberg_integral(f1, f2, g1, g2, N, h))
        I = float(symmetry_integral(f1, f2, N, h))
        oJ = integral_quadrature_oracle(f1, f2, N, h, 4, "J", g1, g2)
        oI = integral_quadrature_oracle(f1, f2, N, h, 4, "I")
        for exact, oracle in ((J, oJ), (I, oI)):
            cases += 1
            bad += abs(exact - oracle) > 1e-9 * max(1.0, abs(exact))
    return cases, bad


def _weights() -> tuple[int, int]:
    cases = bad = 0
    for h in range(1, 41):
        for q in range(1, 4 * h + 1):
            lhs, rhs = w_comb_identity(q, h)
            cases += 1
            bad += lhs != rhs
        for ell in range(1, h + 1):
            lhs, exact_form = s_sum_identity(ell, h)
            cases += 1
            bad += lhs != exact_form or abs(lhs - Fraction(h * h, ell)) > 2 * h
    for h in (3, 10):
        for a in range(-2 * h - 1, 2 * h + 2):
            cases += 1
            bad += abs(weight_W_quadrature(a, h, QUADRATURE_STEPS) - weight_W(a, h)) > 4 * h * 1e-5
    return cases, bad


def _resummation() -> tuple[int, int]:
    cases = bad = 0
    for k1, k2 in [("unit", "moebius"), ("moebius", "moebius_sq")]:
        lhs, rhs = resummation_identity(make_preset(k1, 40), make_preset(k2, 30))
        cases += 1
        bad += lhs != rhs
    return cases, bad


SUITES: dict[str, Callable[[], tuple[int, int]]] = {
    "opening": _opening,
    "decomposition": _decomposition,
    "bernoulli_fourier": _bernoulli_fourier,
    "ap_count": _ap_count,
    "integrals": _integrals,
    "weights": _weights,
    "resummation": _resummation,
}


def run_identity_suites(names: list[str] | None = None) -> list[SuiteResult]:
    out = []
    for name in names or list(SUITES):
        cases, bad = SUITES[name]()
        out.append(SuiteResult(name, cases, int(bad)))
    return out
