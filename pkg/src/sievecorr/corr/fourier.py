"""Trigonometric forms of the Bernoulli remainder.

All angles are reduced modulo their period in exact integer arithmetic
before the float conversion, and each sum is accumulated as a list of
numpy partial sums in a fixed (l, d'-chunk, j) order, combined with
:func:`math.fsum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..coeff import CoeffFn, DyadicSupport, as_dyadic
from ._grid import pair_blocks

TWO_PI = 2.0 * math.pi


def _float_weights(w: np.ndarray, scale: int) -> np.ndarray:
    return np.asarray(w, dtype=np.float64) / scale


def fourier_truncated_remainder(
    g1: DyadicSupport | CoeffFn,
    g2: DyadicSupport | CoeffFn,
    N: int,
    a: int,
    delta: float,
    *,
    J_fixed: int | None = None,
) -> float:
    """Truncated sine series for the remainder::

        (2/pi) sum g1 g2 sum_{j <= J} (sin(2 pi M2 j/q) - sin(2 pi M1 j/q)) / j * cos(2 pi j r/q)

    with ``J = [l d' q' / N^(1-delta)]`` per cell.  ``J_fixed`` replaces the
    per-cell cutoff by one common value (used for convergence reports).
    """
    if a == 0:
        raise ValueError("shift must be nonzero")
    if not 0 < delta < 0.5:
        raise ValueError("delta must lie in (0, 1/2)")
    c1, c2 = as_dyadic(g1).underlying, as_dyadic(g2).underlying
    scale = c1.denominator * c2.denominator
    power = N ** (1.0 - delta)
    partials: list[float] = []
    for blk in pair_blocks(c1, c2, N, a):
        q = blk.qp
        if J_fixed is None:
            J = np.floor(blk.ell * blk.dp * q / power).astype(np.int64)
        else:
            J = np.full(blk.w.shape, J_fixed, dtype=np.int64)
        J = np.where(blk.w != 0, J, 0)
        jmax = int(J.max(initial=0))
        if jmax == 0:
            continue
        wf = _float_weights(blk.w, scale)
        m2, m1, r = blk.m2 % q, blk.m1 % q, blk.r
        for j in range(1, jmax + 1):
            live = J >= j
            diff = np.sin(TWO_PI * ((m2 * j) % q) / q) - np.sin(TWO_PI * ((m1 * j) % q) / q)
            term = wf * diff * np.cos(TWO_PI * ((r * j) % q) / q) / j
            partials.append(float(np.sum(term, where=live)))
    return 2.0 / math.pi * math.fsum(partials)


def cotangent_remainder(g1: CoeffFn, g2: CoeffFn, N: int, a: int) -> float:
    """The remainder through the finite cotangent expansion of ``B1`` (no truncation).

    ``(2/q) sum_{j <= q/2} cot(pi j/q) (sin(2 pi M2 j/q) - sin(2 pi M1 j/q)) cos(2 pi j r/q)``
    per cell; equal to the exact remainder up to rounding.
    """
    if isinstance(g1, DyadicSupport):
        g1 = g1.underlying
    if isinstance(g2, DyadicSupport):
        g2 = g2.underlying
    scale = g1.denominator * g2.denominator
    partials: list[float] = []
    for blk in pair_blocks(g1, g2, N, a):
        q = blk.qp
        wf = _float_weights(blk.w, scale) * (2.0 / q)
        m2, m1, r = blk.m2 % q, blk.m1 % q, blk.r
        for j in range(1, int(q.max()) // 2 + 1):
            live = (2 * j <= q) & (blk.w != 0)
            if not live.any():
                continue
            with np.errstate(divide="ignore", invalid="ignore"):
                cot = 1.0 / np.tan(math.pi * j / q)
            diff = np.sin(TWO_PI * ((m2 * j) % q) / q) - np.sin(TWO_PI * ((m1 * j) % q) / q)
            term = wf * cot * diff * np.cos(TWO_PI * ((r * j) % q) / q)
            partials.append(float(np.sum(term, where=live)))
    return math.fsum(partials)


@dataclass(frozen=True)
class SigmaDecomposition:
    c: int
    sigma: float
    sigma0: float
    sigma1: float
    sigma2: float

    @property
    def gap(self) -> float:
        return self.sigma - (self.sigma0 - self.sigma1 - self.sigma2)


def sigma_components(
    g1: DyadicSupport | CoeffFn,
    g2: DyadicSupport | CoeffFn,
    N: int,
    a: int,
    delta: float,
    c: int,
) -> SigmaDecomposition:
    """Evaluate the four sums of the split ``sin([x]t) = cos({x}t) sin(xt) - sin({x}t) cos(xt)``.

    ``x = cN/(l d')``, ``t = 2 pi j / q'``; ``l`` runs over divisors of ``a``
    up to ``DQ / (log N * N^(1-delta))`` and ``j`` up to ``4QD / (l N^(1-delta))``,
    with ``D``, ``Q`` the bases of the two dyadic blocks.
    """
    if c not in (1, 2):
        raise ValueError("c must be 1 or 2")
    if a == 0:
        raise ValueError("shift must be nonzero")
    d1, d2 = as_dyadic(g1), as_dyadic(g2)
    c1, c2 = d1.underlying, d2.underlying
    D, Q = float(d1.base), float(d2.base)
    power = N ** (1.0 - delta)
    ell_max = D * Q / (math.log(N) * power)
    scale = c1.denominator * c2.denominator
    cN = c * N
    parts: list[list[float]] = [[], [], [], []]
    for blk in pair_blocks(c1, c2, N, a):
        if blk.ell > ell_max:
            continue
        jmax = math.floor(4 * Q * D / (blk.ell * power))
        if jmax < 1:
            continue
        q, r = blk.qp, blk.r
        ld = blk.ell * blk.dp
        whole = (cN // ld) % q  # [x] mod q'
        frac_num = cN % ld  # {x} = frac_num / (l d')
        period = ld * q
        x_num = cN % period  # x t / (2 pi) = x_num j / (l d' q')
        wf = _float_weights(blk.w, scale)
        for j in range(1, jmax + 1):
            cos_r = np.cos(TWO_PI * ((r * j) % q) / q) / j
            ang_floor = TWO_PI * ((whole * j) % q) / q
            ang_x = TWO_PI * ((x_num * j) % period) / period
            ang_frac = TWO_PI * (frac_num * j) / period
            weight = wf * cos_r
            parts[0].append(float(np.sum(weight * np.sin(ang_floor))))
            parts[1].append(float(np.sum(weight * np.sin(ang_x))))
            parts[2].append(float(np.sum(weight * (1.0 - np.cos(ang_frac)) * np.sin(ang_x))))
            parts[3].append(float(np.sum(weight * np.sin(ang_frac) * np.cos(ang_x))))
    sigma, s0, s1, s2 = (math.fsum(p) for p in parts)
    return SigmaDecomposition(c, sigma, s0, s1, s2)
