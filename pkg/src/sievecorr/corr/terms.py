"""Main terms, the Bernoulli remainder and the exact correlation breakdown.

Everything here is exact: each quantity is a sum over the coprime grid of
``g1(l d') g2(l q')`` times an integer, divided by a per-column ``q'`` or a
global constant, and is accumulated as Python integers before a single
:class:`~fractions.Fraction` is formed per column.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..arith import divisors, moebius_table
from ..coeff import CoeffFn, DyadicSupport, Segment, as_dyadic, dyadic_blocks, sieve_segment
from .correlation import _check_shift, correlation_direct
from ._grid import pair_blocks, weighted_columns, weighted_total


def _coeff(g: CoeffFn | DyadicSupport) -> CoeffFn:
    return g.underlying if isinstance(g, DyadicSupport) else g


def _column_fraction(cols: dict[int, int], scale: int) -> Fraction:
    # one Fraction per distinct q'; ascending q' keeps the order fixed
    return sum((Fraction(v, q * scale) for q, v in sorted(cols.items()) if v), Fraction(0))


def _accumulate(cols: dict[int, int], qp: np.ndarray, sums: list[int]) -> None:
    for q, v in zip(qp[0].tolist(), sums):
        cols[q] += v


def smooth_main_term(g1: CoeffFn, g2: CoeffFn, N: int, a: int) -> Fraction:
    """``N sum_{l | a} (1/l) sum_{(d,q)=1} g1(ld)/d * g2(lq)/q``.

    The coprime double sum is unfolded with Moebius over the common
    divisor ``e``, keeping integer numerators over ``lcm`` denominators.
    """
    if a == 0:
        raise ValueError("shift must be nonzero")
    g1, g2 = _coeff(g1), _coeff(g2)
    total = Fraction(0)
    for ell in divisors(a):
        dps = [int(d) // ell for d in g1.support if d % ell == 0]
        qps = [int(q) // ell for q in g2.support if q % ell == 0]
        if not dps or not qps:
            continue
        Ld, Lq = math.lcm(*dps), math.lcm(*qps)
        xs = [0] * (dps[-1] + 1)
        for d in dps:
            xs[d] = int(g1.numerators[d * ell]) * (Ld // d)
        ys = [0] * (qps[-1] + 1)
        for q in qps:
            ys[q] = int(g2.numerators[q * ell]) * (Lq // q)
        top = min(dps[-1], qps[-1])
        mu = moebius_table(top)
        acc = 0
        for e in range(1, top + 1):
            if mu[e]:
                acc += int(mu[e]) * sum(xs[e::e]) * sum(ys[e::e])
        total += Fraction(acc, ell * Ld * Lq)
    return N * total / (g1.denominator * g2.denominator)


def floor_main_term(g1: CoeffFn, g2: CoeffFn, N: int, a: int) -> Fraction:
    """``sum g1(ld) g2(lq) (1/q) ([2N/ld] - [N/ld])`` over ``l | a``, ``(d,q)=1``."""
    if a == 0:
        raise ValueError("shift must be nonzero")
    g1, g2 = _coeff(g1), _coeff(g2)
    cols: dict[int, int] = defaultdict(int)
    for blk in pair_blocks(g1, g2, N, a):
        _accumulate(cols, blk.qp, weighted_columns(blk.w, blk.m2 - blk.m1))
    return _column_fraction(cols, g1.denominator * g2.denominator)


def _twice_b1(m: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Integer ``2q B1(m/q)`` elementwise."""
    r = np.mod(m, q)
    return np.where(r == 0, 0, 2 * r - q)


def _remainder(g1: CoeffFn, g2: CoeffFn, N: int, a: int) -> Fraction:
    cols: dict[int, int] = defaultdict(int)
    for blk in pair_blocks(g1, g2, N, a):
        q, r = blk.qp, blk.r
        t = (
            _twice_b1(blk.m2 - r, q)
            - _twice_b1(blk.m1 - r, q)
            + _twice_b1(blk.m2 + r, q)
            - _twice_b1(blk.m1 + r, q)
        )
        _accumulate(cols, q, weighted_columns(blk.w, t))
    return -_column_fraction(cols, 2 * g1.denominator * g2.denominator)


def _correction(g1: CoeffFn, g2: CoeffFn, N: int, a: int) -> Fraction:
    total = 0
    for blk in pair_blocks(g1, g2, N, a):
        q, r = blk.qp, blk.r
        hits = (
            (np.mod(blk.m2 - r, q) == 0).astype(np.int64)
            + (np.mod(blk.m2 + r, q) == 0)
            - (np.mod(blk.m1 - r, q) == 0)
            - (np.mod(blk.m1 + r, q) == 0)
        )
        total += weighted_total(blk.w, hits)
    return Fraction(total, 4 * g1.denominator * g2.denominator)


def bernoulli_remainder(
    g1: DyadicSupport | CoeffFn, g2: DyadicSupport | CoeffFn, N: int, a: int
) -> Fraction:
    """The remainder ``R_{D,Q}(|a|)``: minus the four ``B1`` differences at
    ``([cN/ld] -+ d'^{-1} b) / q``, summed over one pair of dyadic blocks.

    Raises :class:`NonDyadicSupport` when a support spans several blocks;
    use :func:`bernoulli_remainder_blockwise` for general supports.
    """
    if a == 0:
        raise ValueError("shift must be nonzero")
    d1, d2 = as_dyadic(g1), as_dyadic(g2)
    return _remainder(d1.underlying, d2.underlying, N, a)


def bernoulli_remainder_blockwise(g1: CoeffFn, g2: CoeffFn, N: int, a: int) -> Fraction:
    """Sum of :func:`bernoulli_remainder` over all pairs of dyadic blocks."""
    return sum(
        (
            bernoulli_remainder(b1, b2, N, a)
            for b1 in dyadic_blocks(g1)
            for b2 in dyadic_blocks(g2)
        ),
        Fraction(0),
    )


def integer_point_correction(
    g1: DyadicSupport | CoeffFn, g2: DyadicSupport | CoeffFn, N: int, a: int
) -> Fraction:
    """Quarter-weight count of the endpoints ``[cN/ld] = +-d'^{-1} b (mod q')``.

    Sign convention, frozen by the exact breakdown identity::

        (1/4) sum g1 g2 ([M2 = r] + [M2 = -r] - [M1 = r] - [M1 = -r])

    with ``M1 = [N/ld']``, ``M2 = [2N/ld']``, ``r = d'^{-1} b mod q'``.
    """
    if a == 0:
        raise ValueError("shift must be nonzero")
    d1, d2 = as_dyadic(g1), as_dyadic(g2)
    return _correction(d1.underlying, d2.underlying, N, a)


@dataclass(frozen=True)
class CorrelationBreakdown:
    a: int
    direct: Fraction
    symmetrized: Fraction
    smooth_main: Fraction
    floor_main: Fraction
    bernoulli_R: Fraction
    integer_correction: Fraction
    exact_residual: Fraction

    def identity_gap(self) -> Fraction:
        """``symmetrized - (floor_main + R/2 + correction)``; zero when the identity holds."""
        return self.symmetrized - (
            self.floor_main + self.bernoulli_R / 2 + self.integer_correction
        )


def decompose_correlation(
    g1: DyadicSupport | CoeffFn,
    g2: DyadicSupport | CoeffFn,
    N: int,
    a: int,
    f1: Segment | None = None,
    f2: Segment | None = None,
) -> CorrelationBreakdown:
    """Fill every field of :class:`CorrelationBreakdown` for one shift.

    Supports spanning several dyadic blocks are handled as the sum over
    block pairs, which by bilinearity is the single grid sum used here.
    Pass sieved segments to avoid re-sieving; ``f2`` must reach ``|a|``
    beyond ``(N, 2N]`` on both sides.
    """
    if a == 0:
        raise ValueError("shift must be nonzero")
    _check_shift(N, a)
    c1, c2 = _coeff(g1), _coeff(g2)
    if f1 is None:
        f1 = sieve_segment(c1, N + 1, 2 * N)
    if f2 is None:
        f2 = sieve_segment(c2, N + 1 - abs(a), 2 * N + abs(a))
    direct = correlation_direct(f1, f2, N, a)
    sym = (direct + correlation_direct(f1, f2, N, -a)) / 2
    smooth = smooth_main_term(c1, c2, N, a)
    return CorrelationBreakdown(
        a=a,
        direct=direct,
        symmetrized=sym,
        smooth_main=smooth,
        floor_main=floor_main_term(c1, c2, N, a),
        bernoulli_R=_remainder(c1, c2, N, a),
        integer_correction=_correction(c1, c2, N, a),
        exact_residual=sym - smooth,
    )
