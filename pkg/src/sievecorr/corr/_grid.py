"""Blocked iteration over the reduced triples ``(l, d', q')``.

For a shift ``a`` every pair ``d = l d'``, ``q = l q'`` with ``l | a`` and
``(d', q') = 1`` contributes; the blocks below hold those pairs as 2-D
numpy grids (rows ``d'``, columns ``q'``) together with the reciprocal
residue ``d'^{-1} b mod q'`` and the floor endpoints ``[N/ld']``, ``[2N/ld']``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ..arith import divisors, fits_int64, mod_inverse_batch
from ..coeff import CoeffFn

ROW_CHUNK = 256


@dataclass
class PairBlock:
    ell: int
    b: int
    dp: np.ndarray  # (rows, 1) reduced d'
    qp: np.ndarray  # (1, cols) reduced q'
    w: np.ndarray  # g1num(l d') * g2num(l q'), zero off coprime pairs
    coprime: np.ndarray
    r: np.ndarray  # d'^{-1} b mod q', zero off coprime pairs
    m1: np.ndarray  # (rows, 1) floor(N / (l d'))
    m2: np.ndarray  # (rows, 1) floor(2N / (l d'))


def _outer_weights(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if x.dtype != object and y.dtype != object:
        if fits_int64(int(np.max(np.abs(x))) * int(np.max(np.abs(y)))):
            return np.multiply.outer(x, y)
    return np.multiply.outer(x.astype(object), y.astype(object))


def pair_blocks(
    g1: CoeffFn, g2: CoeffFn, N: int, a: int, rows: int = ROW_CHUNK
) -> Iterator[PairBlock]:
    """Yield the nonzero coprime grid blocks in ascending ``l``, then ``d'``."""
    s1, s2 = g1.support, g2.support
    n1, n2 = g1.numerators, g2.numerators
    for ell in divisors(a):
        b = abs(a) // ell
        dps = s1[s1 % ell == 0] // ell
        qps = s2[s2 % ell == 0] // ell
        if dps.size == 0 or qps.size == 0:
            continue
        qp = qps[None, :]
        wq = n2[qps * ell]
        for lo in range(0, dps.size, rows):
            dp = dps[lo : lo + rows, None]
            coprime = np.gcd(dp, qp) == 1
            w = _outer_weights(n1[dp[:, 0] * ell], wq)
            w = np.where(coprime, w, 0)
            inv = mod_inverse_batch(dp, qp)
            r = np.where(coprime, (np.maximum(inv, 0) * (b % qp)) % qp, 0)
            yield PairBlock(
                ell=ell,
                b=b,
                dp=dp,
                qp=qp,
                w=w,
                coprime=coprime,
                r=r,
                m1=N // (ell * dp),
                m2=(2 * N) // (ell * dp),
            )


def weighted_total(w: np.ndarray, c: np.ndarray) -> int:
    """Exact ``sum(w * c)`` for integer grids."""
    prod = _safe_product(w, c)
    if prod.dtype == object:
        return sum(int(v) for v in prod.ravel().tolist())
    return int(prod.sum())


def weighted_columns(w: np.ndarray, c: np.ndarray) -> list[int]:
    """Exact column sums of ``w * c``."""
    prod = _safe_product(w, c)
    if prod.dtype == object:
        return [sum(int(v) for v in col) for col in prod.T.tolist()]
    return [int(v) for v in prod.sum(axis=0)]


def _safe_product(w: np.ndarray, c: np.ndarray) -> np.ndarray:
    w, c = np.broadcast_arrays(w, c)
    if w.size == 0:
        return np.zeros(w.shape, dtype=np.int64)
    if w.dtype != object and c.dtype != object:
        bound = int(np.max(np.abs(w))) * int(np.max(np.abs(c))) * w.size
        if fits_int64(bound):
            return w * c
    return w.astype(object) * c.astype(object)
