"""Command-line entry point: ``shiftconv <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path

import numpy as np

from ..errors import ShiftConvError


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True, default=str))


def _complex(z: complex) -> list[float]:
    return [z.real, z.imag]


def cmd_sieve(args) -> int:
    from ..arith import build_factor_table, sieve_multiplicative
    from .cache import cache_save

    t0 = time.perf_counter()
    if args.kind == "spf":
        table = build_factor_table(args.n)
        values = table.spf
    else:
        table = sieve_multiplicative(args.kind, args.n)
        values = table.values
    head = {int(i): int(values[i]) for i in range(1, min(args.n, 20) + 1)}
    out = {"kind": args.kind, "n": args.n, "first": head, "sum": int(np.sum(values[1:], dtype=np.int64)),
           "runtime_ms": 1e3 * (time.perf_counter() - t0)}
    if args.cache:
        out["cache"] = str(cache_save(args.cache, table))
    _emit(out)
    return 0


def cmd_tau(args) -> int:
    from ..coeffs import compute_tau_series
    from ..errors import CorruptCacheError
    from .cache import cache_load, cache_save

    t0 = time.perf_counter()
    series, source = None, "computed"
    if args.cache and Path(args.cache).exists():
        try:
            cached = cache_load(args.cache, "tau")
            if cached.limit >= args.n:
                series, source = cached, "cache"
        except CorruptCacheError as exc:
            print(f"ignoring cache {args.cache}: {exc}", file=sys.stderr)
    if series is None:
        series = compute_tau_series(args.n, cap=max(args.n, 10 ** 6))
        if args.cache:
            cache_save(args.cache, series)
    _emit({"n": args.n, "source": source, "limit": series.limit,
           "tau": {i: int(series.tau[i]) for i in range(1, min(args.n, 12) + 1)},
           "runtime_ms": 1e3 * (time.perf_counter() - t0)})
    return 0


def cmd_delta_check(args) -> int:
    from ..deltasym import build_scheme, reconstruct_delta_discrete, reconstruct_delta_integral

    scheme = build_scheme(args.l)
    rng = np.random.default_rng(args.seed)
    n = rng.integers(1, args.l + 1, args.pairs)
    m = rng.integers(1, args.l + 1, args.pairs)
    m[: args.pairs // 4] = n[: args.pairs // 4]
    t0 = time.perf_counter()
    if args.integral:
        err = float(np.max(np.abs(reconstruct_delta_integral(n, m, scheme) - (n == m))))
    else:
        err = max(abs(reconstruct_delta_discrete(a, b, scheme) - (a == b)) for a, b in zip(n, m))
    _emit({"L": args.l, "Q": scheme.Q, "form": "integral" if args.integral else "discrete",
           "pairs": args.pairs, "max_abs_err": err, "runtime_ms": 1e3 * (time.perf_counter() - t0)})
    return 0


def cmd_charsum(args) -> int:
    from ..arith import divisors
    from ..expsums import CharSumInput, char_sum_direct, char_sum_reduced

    rng = np.random.default_rng(args.seed)
    worst, cases = 0.0, 0
    for q in range(1, args.qmax + 1):
        for n1 in divisors(q):
            for _ in range(5):
                h, m, n2 = (int(v) for v in rng.integers(-10 * q, 10 * q + 1, 3))
                for sign in (1, -1):
                    inp = CharSumInput(q, n1, n2, h, m, sign)
                    worst = max(worst, abs(char_sum_direct(inp) - char_sum_reduced(inp)) / (q * q))
                    cases += 1
    _emit({"qmax": args.qmax, "cases": cases, "max_err_over_q2": worst})
    return 0


def _report_dict(rep) -> dict:
    d = asdict(rep)
    for k in ("lhs", "rhs", "main_terms"):
        d[k] = _complex(d[k])
    return d


def cmd_voronoi2(args) -> int:
    from ..coeffs import compute_tau_series
    from ..voronoi import gl2_voronoi_check

    series = compute_tau_series(max(20000, int(2 * args.x) + 2))
    _emit(_report_dict(gl2_voronoi_check(args.q, args.a, args.x, series=series)))
    return 0


def cmd_voronoi3(args) -> int:
    from ..voronoi import d3_voronoi_check

    _emit(_report_dict(d3_voronoi_check(args.q, args.a, args.x, sigma=args.sigma, T=args.height)))
    return 0


def cmd_poisson(args) -> int:
    from ..transforms.poisson import poisson_check

    rep = poisson_check("arithmetic_progression", a=args.a, q=args.q, X=args.x)
    d = asdict(rep)
    d["lhs"], d["rhs"] = _complex(rep.lhs), _complex(rep.rhs)
    _emit(d)
    return 0


def cmd_sweep(args) -> int:
    from .config import load_config
    from .sweep import fit_exponent, predicted_slope, sweep, sweep_csv_path

    cfg = load_config(args.config)
    records = sweep(cfg)
    out = {"csv": str(sweep_csv_path(cfg)), "records": len(records),
           "predicted_slope": predicted_slope(cfg.theta)}
    try:
        out["fit"] = asdict(fit_exponent(records))
    except ShiftConvError as exc:
        out["fit"] = f"unavailable: {exc}"
    _emit(out)
    return 0


def cmd_verify(args) -> int:
    from .suite import report_json, run_verification_suite

    rep = run_verification_suite(args.level, log=lambda s: print(s, file=sys.stderr, flush=True))
    text = report_json(rep)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    print(text)
    return 0 if rep["passed"] else 1


def cmd_plot_data(args) -> int:
    from .plotting import plot_data, render_figures

    files = plot_data(args.input, args.output)
    out = {"data": [str(p) for p in files]}
    if args.figures:
        out["figures"] = [str(p) for p in render_figures(files, args.output)]
    _emit(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shiftconv", description="Numerical laboratory for shifted convolution sums.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sieve", help="multiplicative tables by sieving")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--kind", choices=("spf", "d3", "mobius", "phi"), required=True)
    s.add_argument("--cache", help="write the table to this cache file (spf and d3 only)")
    s.set_defaults(func=cmd_sieve)

    s = sub.add_parser("tau", help="Ramanujan tau coefficients")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--cache", help="cache file to read if large enough, else write")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("delta-check", help="delta-symbol reconstruction on random pairs")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--integral", action="store_true", help="use the Fourier-integral form")
    s.add_argument("--pairs", type=int, default=200)
    s.add_argument("--seed", type=int, default=1)
    s.set_defaults(func=cmd_delta_check)

    s = sub.add_parser("charsum", help="direct vs reduced character sums")
    s.add_argument("--qmax", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_charsum)

    for name, func in (("voronoi2", cmd_voronoi2), ("voronoi3", cmd_voronoi3), ("poisson", cmd_poisson)):
        s = sub.add_parser(name)
        s.add_argument("--q", type=int, required=True)
        s.add_argument("--a", type=int, required=True)
        s.add_argument("--x", type=float, required=True)
        if name == "voronoi3":
            s.add_argument("--sigma", type=float, default=0.0)
            s.add_argument("--height", type=float, default=100.0)
        s.set_defaults(func=func)

    s = sub.add_parser("sweep", help="exponent sweep from a config file")
    s.add_argument("--config", required=True)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("verify", help="run the verification suite")
    s.add_argument("--level", choices=("fast", "full"), default="fast")
    s.add_argument("--output", help="also write the JSON report here")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("plot-data", help="per-theta log2 data files from sweep CSVs")
    s.add_argument("--input", nargs="+", required=True)
    s.add_argument("--output", required=True)
    s.add_argument("--figures", action="store_true", help="also render PNGs (needs matplotlib)")
    s.set_defaults(func=cmd_plot_data)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ShiftConvError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
