"""Shifted correlations ``C(a) = sum_{N < n <= 2N} f1(n) f2(n - a)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.signal import fftconvolve

from ..arith import exact_dot
from ..coeff import CoeffFn, Segment
from ..errors import ShiftTooLarge, TableTooNarrow
from ._grid import pair_blocks, weighted_total

# rounding the FFT output to integers is allowed while this bound stays below it
_ROUNDING_SLACK = 0.1


def _check_shift(N: int, a: int) -> None:
    if abs(a) >= N:
        raise ShiftTooLarge(f"need |a| < N, got a={a}, N={N}")


def correlation_direct(f1: Segment, f2: Segment, N: int, a: int) -> Fraction:
    """Exact ``C(a)`` by a single dot product over ``(N, 2N]``."""
    _check_shift(N, a)
    x = f1.window(N + 1, 2 * N)
    y = f2.window(N + 1 - a, 2 * N - a)
    return Fraction(exact_dot(x, y), f1.den * f2.den)


def symmetrized_correlation(f1: Segment, f2: Segment, N: int, a: int) -> Fraction:
    return (correlation_direct(f1, f2, N, a) + correlation_direct(f1, f2, N, -a)) / 2


@dataclass(frozen=True)
class CorrelationTable:
    """``C(a)`` for ``-amax <= a <= amax``; ``values[amax + a]`` holds ``C(a)``."""

    amax: int
    values: np.ndarray
    exact: bool  # True when the FFT output was rounded to exact integers

    def __getitem__(self, a: int) -> float:
        if abs(a) > self.amax:
            raise TableTooNarrow(f"shift {a} outside table range +-{self.amax}")
        return float(self.values[self.amax + a])

    def shifts(self) -> range:
        return range(-self.amax, self.amax + 1)


def correlation_all_shifts(f1: Segment, f2: Segment, N: int, amax: int) -> CorrelationTable:
    """All ``C(a)``, ``|a| <= amax``, from one FFT cross-correlation.

    The numerators are integers, so when the floating-point error estimate
    is safely below 1/2 the result is rounded and is then exact.
    """
    if amax < 0:
        raise ValueError("amax must be >= 0")
    _check_shift(N, amax)
    x = np.asarray(f1.window(N + 1, 2 * N), dtype=np.float64)
    y = np.asarray(f2.window(N + 1 - amax, 2 * N + amax), dtype=np.float64)
    # z[k] = sum_i y[i + k] x[i], so C(a) = z[amax - a]
    z = fftconvolve(y, x[::-1], mode="valid")[::-1]
    err = 16 * np.finfo(np.float64).eps * math.log2(len(y) + 2)
    err *= float(np.linalg.norm(x)) * float(np.linalg.norm(y))
    exact = err < _ROUNDING_SLACK
    if exact:
        z = np.rint(z)
    return CorrelationTable(amax, z / (f1.den * f2.den), exact)


def open_correlation_exact(g1: CoeffFn, g2: CoeffFn, N: int, a: int) -> Fraction:
    """Symmetrized correlation from exact progression counts, no sieving.

    Sums ``g1(l d') g2(l q') * (#{m ~ N/ld' : m = +r (q')} + #{m = -r (q')}) / 2``
    over ``l | a`` and coprime ``(d', q')`` with ``r = d'^{-1} |a|/l``.
    """
    if a == 0:
        raise ValueError("shift must be nonzero")
    _check_shift(N, a)
    total = 0
    for blk in pair_blocks(g1, g2, N, a):
        q, r = blk.qp, blk.r
        plus = (blk.m2 - r) // q - (blk.m1 - r) // q
        minus = (blk.m2 + r) // q - (blk.m1 + r) // q
        total += weighted_total(blk.w, plus + minus)
    return Fraction(total, 2 * g1.denominator * g2.denominator)
