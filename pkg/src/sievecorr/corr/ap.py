"""Discrepancy of ``f`` in reduced residue classes, summed over moduli."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..arith import euler_phi, fits_int64
from ..coeff import CoeffFn, sieve_segment


def _residue_sums(values: np.ndarray, q: int) -> list[int]:
    """``S[r] = sum_{n = r (q)} values[n]`` for ``r = 0..q-1``."""
    pad = (-len(values)) % q
    grid = np.concatenate([values, np.zeros(pad, dtype=values.dtype)]).reshape(-1, q)
    if values.dtype == object:
        return [sum(col) for col in grid.T.tolist()]
    return [int(v) for v in grid.sum(axis=0)]


def ap_discrepancy_sum(g: CoeffFn, x: int, Qmax: int) -> Fraction:
    """``sum_{q <= Qmax} max_{(a,q)=1} |sum_{n <= x, n = a (q)} f(n) - (1/phi(q)) sum_{n <= x, (n,q)=1} f(n)|``.

    Returned as an exact rational.
    """
    if not 1 <= Qmax <= x:
        raise ValueError("need 1 <= Qmax <= x")
    seg = sieve_segment(g, 1, x)
    values = np.concatenate([np.zeros(1, dtype=seg.numer.dtype), seg.numer])
    if values.dtype != object and not fits_int64(int(np.abs(values).sum()) * Qmax):
        values = values.astype(object)
    total = Fraction(0)
    for q in range(1, Qmax + 1):
        sums = _residue_sums(values, q)
        reduced = [r for r in range(q) if math.gcd(r, q) == 1]
        phi = euler_phi(q)
        coprime_total = sum(sums[r] for r in reduced)
        worst = max(abs(phi * sums[r] - coprime_total) for r in reduced)
        total += Fraction(worst, phi * seg.den)
    return total
