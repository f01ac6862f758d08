"""Sweep points, the sweep driver and exponent regression."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

import numpy as np

from .. import __version__
from ..coeff import CoeffFn, make_preset, zero_coeff
from ..corr.terms import decompose_correlation
from ..errors import DegenerateFit, SieveCorrError
from ..fitting import loglog_fit
from ..integrals import full_report, integral_segments
from .config import SweepConfig
from .records import RunRecord, field_value

SPOT_SHIFTS = 16


def lab_preset(kind: str, bound: int) -> CoeffFn:
    return zero_coeff(bound) if kind == "zero" else make_preset(kind, bound)


def spot_shifts(N: int, h: int, seed: int, count: int = SPOT_SHIFTS) -> list[int]:
    """``count`` shifts in ``[1, min(2h, N-1)]`` drawn from the seed; 1, 2 and h always included."""
    top = min(2 * h, N - 1)
    chosen = sorted({a for a in (1, 2, h) if 1 <= a <= top})
    rest = [a for a in range(1, top + 1) if a not in chosen]
    rng = np.random.default_rng([seed, N])
    k = min(count - len(chosen), len(rest))
    if k > 0:
        chosen += [int(a) for a in rng.choice(rest, size=k, replace=False)]
    return sorted(chosen)


def run_point(cfg: SweepConfig, N: int) -> RunRecord:
    """One sweep point: sieve once, integrals report, decomposition spot checks."""
    h = cfg.width(N)
    D, Q = cfg.levels(N)
    rec = RunRecord(
        N=N,
        theta=cfg.theta,
        lambda1=cfg.lambda1,
        lambda2=cfg.lambda2,
        delta=cfg.delta,
        preset1=cfg.preset1,
        preset2=cfg.preset2,
        seed=cfg.seed,
        h=h,
        D=D,
        Q=Q,
        version=__version__,
    )
    try:
        t0 = time.perf_counter()
        g1, g2 = lab_preset(cfg.preset1, D), lab_preset(cfg.preset2, Q)
        f1, f2 = integral_segments(g1, g2, N, h)
        t1 = time.perf_counter()
        rep = full_report(g1, g2, N, h, cfg.delta, f1, f2)
        t2 = time.perf_counter()
        scale = N * h * h
        rec.J_exact, rec.I_exact = rep.J_exact, rep.I_exact
        rec.J_over_Nh2, rec.I_over_Nh2 = rep.J_exact / scale, rep.I_exact / scale
        rec.J_diff, rec.I_diff = rep.J_diff, rep.I_diff
        rec.J_envelope, rec.I_envelope = rep.J_envelope, rep.I_envelope
        shifts = spot_shifts(N, h, cfg.seed)
        rec.spot_shifts = ";".join(map(str, shifts))
        failures = 0
        for a in shifts:
            if decompose_correlation(g1, g2, N, a, f1, f2).identity_gap() != 0:
                failures += 1
        rec.spot_failures = failures
        t3 = time.perf_counter()
        rec.timings = {"sieve": t1 - t0, "integrals": t2 - t1, "decomposition": t3 - t2}
        reasons = []
        if abs(rep.J_diff) > rep.J_budget:
            reasons.append("J reconstruction over budget")
        if abs(rep.I_diff) > rep.I_budget:
            reasons.append("I reconstruction over budget")
        if failures:
            reasons.append(f"{failures} decomposition spot checks failed")
        rec.failure = "; ".join(reasons)
    except (SieveCorrError, MemoryError) as exc:
        rec.failure = f"{type(exc).__name__}: {exc}"
    return rec


def _point(args: tuple[SweepConfig, int]) -> RunRecord:
    return run_point(*args)


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list[RunRecord]:
    """All points of ``cfg.N_list``; records come back in config order either way."""
    jobs = [(cfg, N) for N in cfg.N_list]
    if workers <= 1:
        return [_point(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_point, jobs))


def estimate_exponent(
    records: Sequence[RunRecord | dict], x_field: str, y_field: str
) -> tuple[float, float, float]:
    """Least-squares slope of ``log y`` on ``log x`` over records with positive values."""
    xs, ys = [], []
    for rec in records:
        x, y = field_value(rec, x_field), field_value(rec, y_field)
        if x is None or y is None:
            continue
        x, y = float(x), float(y)
        if x > 0 and y > 0:
            xs.append(x)
            ys.append(y)
    if len(xs) < 3:
        raise DegenerateFit(f"need at least 3 usable points, got {len(xs)}")
    return loglog_fit(xs, ys)


def empirical_eps0(records: Sequence[RunRecord]) -> float:
    """Negated slope of ``J/(N h^2)`` against ``N``."""
    return -estimate_exponent(records, "N", "J_over_Nh2")[0]


def is_nonincreasing(values: Sequence[Fraction | float], allowed_violations: int = 0) -> bool:
    bad = sum(1 for u, v in zip(values, values[1:]) if v > u)
    return bad <= allowed_violations
