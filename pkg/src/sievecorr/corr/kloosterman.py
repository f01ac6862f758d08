"""Bilinear forms with Kloosterman fractions ``e_q(k d^{-1})``."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..arith import mod_inverse, mod_inverse_batch
from ..coeff import CoeffFn, DyadicSupport, random_signs
from ..fitting import loglog_fit

EXPONENT_DQ = 7 / 8
EXPONENT_Q = 11 / 48


@dataclass(frozen=True)
class BilinearValue:
    re: float
    im: float
    trivial_bound: float

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)


def _block_arrays(g: CoeffFn, base: int) -> tuple[np.ndarray, np.ndarray]:
    DyadicSupport(base, g)  # validates the block
    idx = g.support
    return idx, np.array([float(g(int(i))) for i in idx])


def kloosterman_bilinear(g1: CoeffFn, g2: CoeffFn, D: int, Q: int, k: int) -> BilinearValue:
    """``sum_{d ~ D} g1(d) sum_{q ~ Q, (q,d)=1} g2(q) e_q(k d^{-1})``.

    Reciprocals come from one batched extended-Euclid pass over the whole
    ``(d, q)`` grid.
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    ds, w1 = _block_arrays(g1, D)
    qs, w2 = _block_arrays(g2, Q)
    bound = float(np.abs(w1).sum() * np.abs(w2).sum())
    if ds.size == 0 or qs.size == 0:
        return BilinearValue(0.0, 0.0, bound)
    d, q = ds[:, None], qs[None, :]
    coprime = np.gcd(d, q) == 1
    inv = np.maximum(mod_inverse_batch(d, q), 0)
    phase = 2.0 * math.pi * ((inv * (k % q)) % q) / q
    w = np.where(coprime, np.multiply.outer(w1, w2), 0.0)
    re = math.fsum((w * np.cos(phase)).sum(axis=1))
    im = math.fsum((w * np.sin(phase)).sum(axis=1))
    return BilinearValue(re, im, bound)


def kloosterman_bilinear_brute(
    g1: CoeffFn, g2: CoeffFn, D: int, Q: int, k: int
) -> BilinearValue:
    """Reference path: one scalar modular inverse and complex exponential per pair."""
    if k == 0:
        raise ValueError("k must be nonzero")
    total = 0j
    for d in range(D + 1, 2 * D + 1):
        a = float(g1(d))
        if not a:
            continue
        for q in range(Q + 1, 2 * Q + 1):
            b = float(g2(q))
            if b and math.gcd(d, q) == 1:
                total += a * b * cmath.exp(2j * math.pi * (k * mod_inverse(d, q) % q) / q)
    bound = float(sum(abs(g1(d)) for d in range(D + 1, 2 * D + 1)))
    bound *= float(sum(abs(g2(q)) for q in range(Q + 1, 2 * Q + 1)))
    return BilinearValue(total.real, total.imag, bound)


def envelope(D: int, Q: int) -> float:
    """``(DQ)^(7/8) Q^(11/48)``."""
    return (D * Q) ** EXPONENT_DQ * Q**EXPONENT_Q


Ensemble = Sequence[Callable[[int, int], tuple[CoeffFn, CoeffFn]]]


def sign_ensemble(trials: int, seed: int) -> list[Callable[[int, int], tuple[CoeffFn, CoeffFn]]]:
    """``trials`` members drawing independent random +-1 signs on each block."""
    members = []
    for t in range(trials):
        def member(D: int, Q: int, t=t):
            rng = np.random.default_rng([seed, t, D, Q])
            return random_signs(D, 2 * D, rng), random_signs(Q, 2 * Q, rng)

        members.append(member)
    return members


@dataclass(frozen=True)
class BilinearReport:
    rows: list[dict]
    slope: float  # log-log slope of mean |B| against DQ
    envelope_slope: float


def bilinear_magnitude_report(
    ensemble: Ensemble, D_list: Sequence[int], Q_list: Sequence[int], k: int
) -> BilinearReport:
    """Mean and max ``|B|`` over the ensemble for each ``(D, Q)`` pair, next to the envelope."""
    rows = []
    for D, Q in zip(D_list, Q_list):
        mags = [abs(kloosterman_bilinear(*member(D, Q), D, Q, k)) for member in ensemble]
        rows.append(
            {
                "D": D,
                "Q": Q,
                "mean_abs": float(np.mean(mags)) if mags else 0.0,
                "max_abs": max(mags, default=0.0),
                "envelope": envelope(D, Q),
            }
        )
    x = [r["D"] * r["Q"] for r in rows]
    slope = math.nan
    pos = [(xi, r["mean_abs"]) for xi, r in zip(x, rows) if r["mean_abs"] > 0]
    if len(pos) >= 2:
        slope = loglog_fit([p[0] for p in pos], [p[1] for p in pos])[0]
    env_slope = loglog_fit(x, [r["envelope"] for r in rows])[0] if len(rows) >= 2 else math.nan
    return BilinearReport(rows, slope, env_slope)
