"""Command-line entry point.

Exit codes: 0 success, 1 identity failure, 2 configuration error,
3 resource or budget error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from ..coeff import CoeffFn, load_coeff_table, sieve_segment
from ..corr import (
    bilinear_magnitude_report,
    correlation_direct,
    decompose_correlation,
    open_correlation_exact,
    sign_ensemble,
)
from ..errors import ConfigError, LimitTooLarge, SieveCorrError
from ..integrals import full_report
from .config import LAB_PRESETS, build_config
from .identities import SUITES, run_identity_suites
from .records import emit_csv, emit_json, emit_plot_data, emit_timings, load_records
from .sweep import empirical_eps0, estimate_exponent, lab_preset, run_sweep

EXIT_OK, EXIT_IDENTITY, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3


class BudgetExceeded(SieveCorrError):
    pass


def _coeff(preset: str, bound: int, table: str | None) -> CoeffFn:
    if table:
        return load_coeff_table(table, bound)
    return lab_preset(preset, bound)


def _add_pair(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset1", default="moebius", choices=LAB_PRESETS)
    p.add_argument("--preset2", default="moebius", choices=LAB_PRESETS)
    p.add_argument("--D", type=int, required=True, help="support bound of g1")
    p.add_argument("--Q", type=int, required=True, help="support bound of g2")
    p.add_argument("--table1", help="coefficient file for g1 (overrides preset1)")
    p.add_argument("--table2", help="coefficient file for g2 (overrides preset2)")


def _pair(args) -> tuple[CoeffFn, CoeffFn]:
    return _coeff(args.preset1, args.D, args.table1), _coeff(args.preset2, args.Q, args.table2)


def _cmd_sieve(args) -> int:
    g = _coeff(args.preset, args.Q, args.table)
    seg = sieve_segment(g, args.start, args.end)
    lines = [f"{n} {seg[n]}" for n in range(seg.start, seg.end + 1)]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_corr(args) -> int:
    g1, g2 = _pair(args)
    N, a = args.N, args.a
    f1 = sieve_segment(g1, N + 1, 2 * N)
    f2 = sieve_segment(g2, N + 1 - abs(a), 2 * N + abs(a))
    plus, minus = correlation_direct(f1, f2, N, a), correlation_direct(f1, f2, N, -a)
    print(f"C({a}) = {plus}")
    print(f"C({-a}) = {minus}")
    print(f"symmetrized = {(plus + minus) / 2}")
    if a:
        print(f"open exact = {open_correlation_exact(g1, g2, N, a)}")
    return EXIT_OK


def _cmd_decompose(args) -> int:
    g1, g2 = _pair(args)
    b = decompose_correlation(g1, g2, args.N, args.a)
    for name in ("a", "direct", "symmetrized", "smooth_main", "floor_main",
                 "bernoulli_R", "integer_correction", "exact_residual"):
        print(f"{name} = {getattr(b, name)}")
    gap = b.identity_gap()
    print(f"identity_gap = {gap}")
    return EXIT_OK if gap == 0 else EXIT_IDENTITY


def _cmd_integrals(args) -> int:
    g1, g2 = _pair(args)
    rep = full_report(g1, g2, args.N, args.h, args.delta)
    for name, value in vars(rep).items():
        if isinstance(value, Fraction):
            value = f"{value} ({float(value):.6g})"
        print(f"{name} = {value}")
    if abs(rep.J_diff) > rep.J_budget or abs(rep.I_diff) > rep.I_budget:
        raise BudgetExceeded("reconstruction difference exceeds its budget")
    return EXIT_OK


def _cmd_bilinear(args) -> int:
    if len(args.D) != len(args.Q):
        raise ConfigError("--D and --Q need the same number of values")
    rep = bilinear_magnitude_report(sign_ensemble(args.trials, args.seed), args.D, args.Q, args.k)
    print("D,Q,mean_abs,max_abs,envelope")
    for r in rep.rows:
        print(f"{r['D']},{r['Q']},{r['mean_abs']:.6g},{r['max_abs']:.6g},{r['envelope']:.6g}")
    print(f"slope vs DQ = {rep.slope:.4f}; envelope slope = {rep.envelope_slope:.4f}")
    return EXIT_OK


def _cmd_identities(args) -> int:
    results = run_identity_suites(args.suite or None)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.cases} cases, {r.failures} failures")
    return EXIT_OK if all(r.passed for r in results) else EXIT_IDENTITY


def _cmd_sweep(args) -> int:
    overrides = {
        "N_list": args.N_list,
        "theta": args.theta,
        "lambda1": args.lambda1,
        "lambda2": args.lambda2,
        "delta": args.delta,
        "preset1": args.preset1,
        "preset2": args.preset2,
        "seed": args.seed,
        "output_path": args.output_path,
    }
    cfg = build_config(args.config, overrides)
    records = run_sweep(cfg, workers=args.workers)
    base = cfg.output_path
    emit_csv(records, base + ".csv")
    emit_json(records, base + ".json")
    emit_timings(records, base + ".timings.json")
    for r in records:
        status = r.failure or "ok"
        ratio = "-" if r.J_over_Nh2 is None else f"{float(r.J_over_Nh2):.6g}"
        print(f"N={r.N} h={r.h} D={r.D} Q={r.Q} J/(N h^2)={ratio} [{status}]")
    try:
        print(f"empirical_eps0 = {empirical_eps0(records):.6f}")
    except SieveCorrError as exc:
        print(f"empirical_eps0 unavailable: {exc}")
    if any(r.spot_failures for r in records):
        return EXIT_IDENTITY
    if any(r.failure for r in records):
        return EXIT_RESOURCE
    return EXIT_OK


def _cmd_fit(args) -> int:
    records = load_records(args.records)
    slope, intercept, r2 = estimate_exponent(records, args.x, args.y)
    print(f"slope = {slope:.6f}")
    print(f"intercept = {intercept:.6f}")
    print(f"r2 = {r2:.6f}")
    if args.plot:
        emit_plot_data(records, args.x, args.y, args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sievecorr", description="Exact correlations and short-interval integrals of sieve functions."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="dump f = g*1 on a segment")
    p.add_argument("--preset", default="moebius", choices=LAB_PRESETS)
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--table")
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--end", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sieve)

    p = sub.add_parser("corr", help="correlation at one shift")
    _add_pair(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(func=_cmd_corr)

    p = sub.add_parser("decompose", help="exact breakdown of one correlation")
    _add_pair(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("integrals", help="Selberg and symmetry integrals with reconstructions")
    _add_pair(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--delta", type=float, default=0.01)
    p.set_defaults(func=_cmd_integrals)

    p = sub.add_parser("bilinear", help="Kloosterman bilinear magnitude report")
    p.add_argument("--D", type=int, nargs="+", required=True)
    p.add_argument("--Q", type=int, nargs="+", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bilinear)

    p = sub.add_parser("identities", help="run the exact identity suites")
    p.add_argument("--suite", action="append", choices=list(SUITES))
    p.set_defaults(func=_cmd_identities)

    p = sub.add_parser("sweep", help="run a sweep and write CSV/JSON records")
    p.add_argument("--config", help="flat key = value file; flags override it")
    p.add_argument("--N-list", dest="N_list")
    p.add_argument("--theta", type=float)
    p.add_argument("--lambda1", type=float)
    p.add_argument("--lambda2", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--preset1")
    p.add_argument("--preset2")
    p.add_argument("--seed", type=int)
    p.add_argument("--output-path", dest="output_path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("fit", help="log-log regression over a records file")
    p.add_argument("records")
    p.add_argument("--x", default="N")
    p.add_argument("--y", default="J_over_Nh2")
    p.add_argument("--plot", help="write the (x, y) pairs as a two-column CSV")
    p.set_defaults(func=_cmd_fit)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (LimitTooLarge, MemoryError, BudgetExceeded) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (SieveCorrError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
