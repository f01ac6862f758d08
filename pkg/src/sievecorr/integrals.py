"""Selberg and symmetry integrals of sieve functions, and their weights.

For integer ``h`` the integrands are constant on every open interval
``(k, k+1)``, so both integrals over ``[N, 2N]`` reduce to exact sums over
``k = N .. 2N-1`` of products of window sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import dist_to_int, exact_dot, exact_sum, fits_int64
from .coeff import CoeffFn, Segment, mean_value, sieve_segment
from .corr.correlation import CorrelationTable, correlation_all_shifts, correlation_direct
from .corr.kloosterman import envelope
from .errors import ShiftTooLarge, TableTooNarrow

# over-count constant for the discarded boundary pairs, see reconstruction_budgets
BUDGET_CONSTANT = 64


def weight_S(a: int, h: int) -> int:
    if h < 1:
        raise ValueError("h must be >= 1")
    return max(h - abs(a), 0)


def weight_W(a: int, h: int) -> int:
    """Closed form of ``int_{|t|<=h, |t-a|<=h} sgn(t) sgn(t-a) dt``."""
    if h < 1:
        raise ValueError("h must be >= 1")
    a = abs(a)
    if a <= h:
        return 2 * h - 3 * a
    if a <= 2 * h:
        return a - 2 * h
    return 0


def weight_W_quadrature(a: int, h: int, steps: int) -> float:
    """Midpoint rule for the sign-product integral defining ``W``."""
    if steps < 1000:
        raise ValueError("steps must be >= 1000")
    lo, hi = max(-h, a - h), min(h, a + h)
    if lo >= hi:
        return 0.0
    width = (hi - lo) / steps
    t = lo + width * (np.arange(steps) + 0.5)
    return float(np.sum(np.sign(t) * np.sign(t - a)) * width)


def _window_sums(seg: Segment, first: int, count: int, h: int) -> np.ndarray:
    """Numerator sums over ``n in [first + k, first + k + h - 1]`` for ``k < count``."""
    vals = seg.window(first, first + count + h - 2)
    if vals.dtype != object and not fits_int64(int(np.abs(vals).sum())):
        vals = vals.astype(object)
    prefix = np.concatenate([np.zeros(1, dtype=vals.dtype), np.cumsum(vals)])
    return prefix[h : h + count] - prefix[:count]


def selberg_integral(
    f1: Segment, f2: Segment, g1: CoeffFn, g2: CoeffFn, N: int, h: int
) -> Fraction:
    """Exact ``int_N^{2N} (sum_{x<n<=x+h} f1(n) - M1)(sum_{x<m<=x+h} f2(m) - M2) dx``."""
    _check_width(N, h)
    A = _window_sums(f1, N + 1, N, h)
    B = _window_sums(f2, N + 1, N, h)
    M1, M2 = mean_value(g1, h), mean_value(g2, h)
    cross = Fraction(exact_dot(A, B), f1.den * f2.den)
    sum_a = Fraction(exact_sum(A), f1.den)
    sum_b = Fraction(exact_sum(B), f2.den)
    return cross - M2 * sum_a - M1 * sum_b + N * M1 * M2


def _signed_windows(seg: Segment, N: int, h: int) -> np.ndarray:
    right = _window_sums(seg, N + 1, N, h)  # n in [k+1, k+h]
    left = _window_sums(seg, N + 1 - h, N, h)  # n in [k+1-h, k]
    return right - left


def symmetry_integral(
    f1: Segment, f2: Segment, N: int, h: int, *, sgn_zero: Fraction = Fraction(0)
) -> Fraction:
    """Exact ``int_N^{2N} (sum_{|n-x|<=h} sgn(n-x) f1(n)) (same for f2) dx``.

    The integrand is a step function: constant on each open interval
    ``(k, k+1)`` and taking other values only at the integers, where
    ``sgn(0) = sgn_zero`` enters (see :func:`integer_point_values`).  Those
    points have measure zero, so ``sgn_zero`` cannot change the result.
    """
    _check_width(N, h)
    Fraction(sgn_zero)  # validates the convention
    return Fraction(
        exact_dot(_signed_windows(f1, N, h), _signed_windows(f2, N, h)), f1.den * f2.den
    )


def integer_point_values(
    f1: Segment, f2: Segment, N: int, h: int, sgn_zero: Fraction = Fraction(0)
) -> list[Fraction]:
    """The ``I`` integrand at ``x = N, ..., 2N`` under the convention ``sgn(0) = sgn_zero``."""
    sgn_zero = Fraction(sgn_zero)
    out = []
    for k in range(N, 2 * N + 1):
        vals = []
        for f in (f1, f2):
            right = sum(int(v) for v in f.window(k + 1, k + h))
            left = sum(int(v) for v in f.window(k - h, k - 1))
            vals.append(Fraction(right - left, f.den) + sgn_zero * f[k])
        out.append(vals[0] * vals[1])
    return out


def _check_width(N: int, h: int) -> None:
    if h < 1 or 2 * h > N:
        raise ValueError(f"need 1 <= h <= N/2, got h={h}, N={N}")


def integral_quadrature_oracle(
    f1: Segment,
    f2: Segment,
    N: int,
    h: int,
    subdivisions: int,
    kind: str,
    g1: CoeffFn | None = None,
    g2: CoeffFn | None = None,
) -> float:
    """Riemann sum of the ``J`` or ``I`` integrand on a grid avoiding integers.

    Window sums are recomputed at every sample point directly from the
    definitions; ``kind == "J"`` needs ``g1`` and ``g2`` for the mean values.
    """
    if subdivisions < 4:
        raise ValueError("need at least 4 subdivisions per unit interval")
    v1, v2 = f1.as_float(), f2.as_float()
    if kind == "J":
        if g1 is None or g2 is None:
            raise ValueError("kind J needs g1 and g2")
        M1, M2 = float(mean_value(g1, h)), float(mean_value(g2, h))
    elif kind != "I":
        raise ValueError(f"kind must be 'J' or 'I', got {kind!r}")
    step = 1.0 / subdivisions
    samples = []
    for k in range(N, 2 * N):
        for i in range(subdivisions):
            x = k + (i + 0.5) * step
            if kind == "J":
                lo, hi = math.floor(x) + 1, math.floor(x + h)
                s1 = v1[lo - f1.start : hi - f1.start + 1].sum() - M1
                s2 = v2[lo - f2.start : hi - f2.start + 1].sum() - M2
            else:
                lo, hi = math.ceil(x - h), math.floor(x + h)
                n = np.arange(lo, hi + 1)
                sign = np.sign(n - x)
                s1 = np.dot(sign, v1[lo - f1.start : hi - f1.start + 1])
                s2 = np.dot(sign, v2[lo - f2.start : hi - f2.start + 1])
            samples.append(s1 * s2 * step)
    return math.fsum(samples)


def reconstruct_I(table: CorrelationTable, h: int) -> float:
    """``sum_{|a| <= 2h} W(a) C(a)``."""
    if table.amax < 2 * h:
        raise TableTooNarrow(f"need shifts up to {2 * h}, table has {table.amax}")
    return math.fsum(weight_W(a, h) * table[a] for a in range(-2 * h, 2 * h + 1))


def reconstruct_J(table: CorrelationTable, g1: CoeffFn, g2: CoeffFn, N: int, h: int) -> float:
    """``sum_{|a| < h} S(a) C(a) - N M1 M2``, the ``a = 0`` term included."""
    if table.amax < h - 1:
        raise TableTooNarrow(f"need shifts up to {h - 1}, table has {table.amax}")
    main = float(N * mean_value(g1, h) * mean_value(g2, h))
    return math.fsum([weight_S(a, h) * table[a] for a in range(1 - h, h)] + [-main])


def w_comb_identity(q: int, h: int) -> tuple[int, Fraction]:
    """``sum_{a = 0 (q)} W(a)`` against ``2q ||h/q||``."""
    if q < 1 or h < 1:
        raise ValueError("need q, h >= 1")
    m = (2 * h) // q
    lhs = sum(weight_W(j * q, h) for j in range(-m, m + 1))
    return lhs, 2 * q * dist_to_int(Fraction(h, q))


def s_sum_identity(ell: int, h: int) -> tuple[int, int]:
    """``sum_{b != 0} S(l b)`` by enumeration against ``2 sum_{b <= h/l} (h - l b)``."""
    if not 1 <= ell <= h:
        raise ValueError("need 1 <= ell <= h")
    # S(l b) vanishes once |l b| >= h, so the enumeration can stop at |b| = h // l + 1
    top = h // ell + 1
    lhs = sum(weight_S(ell * b, h) for b in range(-top, top + 1) if b)
    exact_form = 2 * sum(h - ell * b for b in range(1, h // ell + 1))
    return lhs, exact_form


def resummation_identity(g1: CoeffFn, g2: CoeffFn) -> tuple[Fraction, Fraction]:
    """Coprime resummation over ``l = (d, q)`` against the product of the two means.

    ``lhs = sum_l l^-2 sum_{(d',q')=1} g1(l d')/d' * g2(l q')/q'`` by a direct
    double loop; ``rhs = (sum_d g1(d)/d)(sum_q g2(q)/q)``.
    """
    lhs = Fraction(0)
    for ell in range(1, min(g1.support_bound, g2.support_bound) + 1):
        xs = {d: g1(ell * d) / d for d in range(1, g1.support_bound // ell + 1) if g1(ell * d)}
        ys = {q: g2(ell * q) / q for q in range(1, g2.support_bound // ell + 1) if g2(ell * q)}
        if not xs or not ys:
            continue
        inner = Fraction(0)
        for d, x in xs.items():
            inner += x * sum((y for q, y in ys.items() if math.gcd(d, q) == 1), Fraction(0))
        lhs += inner / (ell * ell)
    rhs = mean_value(g1, 1) * mean_value(g2, 1)
    return lhs, rhs


@dataclass(frozen=True)
class IntegralReport:
    N: int
    h: int
    J_exact: Fraction
    I_exact: Fraction
    J_reconstructed: float
    I_reconstructed: float
    mean_product: Fraction
    J_diff: float
    I_diff: float
    J_budget: float
    I_budget: float
    J_envelope: float
    I_envelope: float
    exact_table: bool


def reconstruction_budgets(
    f1: Segment, f2: Segment, g1: CoeffFn, g2: CoeffFn, N: int, h: int
) -> tuple[float, float]:
    """Tripwires ``(J_budget, I_budget)`` for the weighted-correlation reconstructions.

    ``I``: ``64 h^3 F1 F2``; ``J``: ``64 (N h eps F1 F2 + h^3 F1 F2 + Q h^2 G1 G2)``,
    with ``F`` the max of ``|f|`` on the segment, ``G`` the max of ``|g|`` and
    ``Q`` the larger support bound.
    """
    F = float(f1.max_abs) * float(f2.max_abs)
    G = float(g1.max_abs) * float(g2.max_abs)
    Q = max(g1.support_bound, g2.support_bound)
    eps = float(np.finfo(np.float64).eps)
    c = BUDGET_CONSTANT
    return c * (N * h * eps * F + h**3 * F + Q * h * h * G), c * h**3 * F


def boundary_terms_exact(
    f1: Segment, f2: Segment, g1: CoeffFn, g2: CoeffFn, N: int, h: int
) -> tuple[Fraction, Fraction]:
    """Exact ``J - (sum S C - N M1 M2)`` and ``I - sum W C`` with exact correlations."""
    corr = {a: correlation_direct(f1, f2, N, a) for a in range(-2 * h, 2 * h + 1)}
    M = mean_value(g1, h) * mean_value(g2, h)
    recon_J = sum((weight_S(a, h) * corr[a] for a in range(1 - h, h)), Fraction(0)) - N * M
    recon_I = sum((weight_W(a, h) * c for a, c in corr.items()), Fraction(0))
    J = selberg_integral(f1, f2, g1, g2, N, h)
    I = symmetry_integral(f1, f2, N, h)
    return J - recon_J, I - recon_I


def integral_segments(g1: CoeffFn, g2: CoeffFn, N: int, h: int) -> tuple[Segment, Segment]:
    """Segments wide enough for both integrals and all shifts ``|a| <= 2h``."""
    lo, hi = max(1, N - 2 * h), 2 * N + 2 * h
    return sieve_segment(g1, lo, hi), sieve_segment(g2, lo, hi)


def full_report(
    g1: CoeffFn,
    g2: CoeffFn,
    N: int,
    h: int,
    delta: float,
    f1: Segment | None = None,
    f2: Segment | None = None,
) -> IntegralReport:
    """Exact integrals, their reconstructions, budgets and the error-term envelope.

    Needs ``2h < N`` so that every shift of the reconstructions is legal.
    """
    _check_width(N, h)
    if 2 * h >= N:
        raise ShiftTooLarge(f"reconstructions need 2h < N, got h={h}, N={N}")
    if f1 is None or f2 is None:
        f1, f2 = integral_segments(g1, g2, N, h)
    J = selberg_integral(f1, f2, g1, g2, N, h)
    I = symmetry_integral(f1, f2, N, h)
    table = correlation_all_shifts(f1, f2, N, 2 * h)
    rJ = reconstruct_J(table, g1, g2, N, h)
    rI = reconstruct_I(table, h)
    budget_J, budget_I = reconstruction_budgets(f1, f2, g1, g2, N, h)
    D, Q = g1.support_bound, g2.support_bound
    tail = N**delta * envelope(D, Q) * h * h + N ** (1 - 2 * delta / 3) * h * h
    return IntegralReport(
        N=N,
        h=h,
        J_exact=J,
        I_exact=I,
        J_reconstructed=rJ,
        I_reconstructed=rI,
        mean_product=N * mean_value(g1, h) * mean_value(g2, h),
        J_diff=float(J) - rJ,
        I_diff=float(I) - rI,
        J_budget=budget_J,
        I_budget=budget_I,
        J_envelope=N * h + tail + Q * h * h,
        I_envelope=N * h + tail,
        exact_table=table.exact,
    )
