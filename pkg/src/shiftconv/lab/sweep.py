"""Direct computation of the smoothed shifted convolution sum and exponent sweeps.

    S(H, X) = (1/H) sum_h lam_f(h) V1(h/H) sum_n lam_pi(1, n) lam_g(n + h) V2(n/X)
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..bump import SmoothBump
from ..coeffs import GL3CoeffProvider, HeckeSeries, compute_tau_series, gl3_provider
from ..errors import DegeneracyError, RangeError
from .config import SweepConfig

CSV_COLUMNS = ("X", "H", "S", "abs_S", "trivial_ratio", "runtime_ms")
STANDARD_BUMP = SmoothBump(1.0, 2.0)


@dataclass(frozen=True)
class SweepRecord:
    X: int
    H: int
    S: float
    trivial_ratio: float
    runtime_ms: float

    @property
    def abs_S(self) -> float:
        return abs(self.S)


def _integer_support(bump: SmoothBump, scale: float) -> np.ndarray:
    lo = int(np.floor(bump.a * scale)) + 1
    hi = int(np.ceil(bump.b * scale)) - 1
    return np.arange(lo, hi + 1)


def compute_S(X: int, H: int, f_series: HeckeSeries, g_series: HeckeSeries, provider: GL3CoeffProvider,
              bumps: tuple[SmoothBump, SmoothBump] = (STANDARD_BUMP, STANDARD_BUMP),
              absolute_f: bool = False) -> SweepRecord:
    """S(H, X) by direct double summation; ``absolute_f`` replaces lam_f(h) by |lam_f(h)|."""
    t0 = time.perf_counter()
    V1, V2 = bumps
    hs = _integer_support(V1, H)
    ns = _integer_support(V2, X)
    if hs.size and hs[-1] > f_series.limit:
        raise RangeError(f"f series limit {f_series.limit} below h = {hs[-1]}")
    if ns.size and ns[-1] > provider.limit:
        raise RangeError(f"GL(3) provider limit {provider.limit} below n = {ns[-1]}")
    if ns.size and hs.size and ns[-1] + hs[-1] > g_series.limit:
        raise RangeError(f"g series limit {g_series.limit} below n + h = {ns[-1] + hs[-1]}")
    outer = V1(hs / H) * f_series.lam[hs] if hs.size else np.zeros(0)
    if absolute_f:
        outer = np.abs(outer)
    inner_w = np.asarray(provider.values[ns], dtype=np.float64) * V2(ns / X)
    lam_g = g_series.lam
    total = 0.0
    n0 = int(ns[0]) if ns.size else 0
    for h, c in zip(hs.tolist(), outer.tolist()):
        if c == 0.0:
            continue
        total += c * float(inner_w @ lam_g[n0 + h:n0 + h + ns.size])
    S = total / H
    return SweepRecord(int(X), int(H), float(S), abs(S) / X, 1e3 * (time.perf_counter() - t0))


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    stderr: float
    r2: float
    dropped: tuple  # X values discarded because |S| < 1e-12


def fit_exponent(records) -> ExponentFit:
    """Least-squares slope of log|S| against log X."""
    keep = [r for r in records if abs(r.S) >= 1e-12]
    dropped = tuple(r.X for r in records if abs(r.S) < 1e-12)
    xs = np.log(np.array([r.X for r in keep], dtype=np.float64))
    if len(keep) < 3 or len(np.unique(xs)) < 3:
        raise DegeneracyError("need at least 3 records with distinct X and |S| >= 1e-12")
    ys = np.log(np.array([abs(r.S) for r in keep]))
    A = np.column_stack([xs, np.ones_like(xs)])
    coef, *_ = np.linalg.lstsq(A, ys, rcond=None)
    resid = ys - A @ coef
    dof = len(xs) - 2
    sxx = float(np.sum((xs - xs.mean()) ** 2))
    stderr = float(np.sqrt(resid @ resid / dof / sxx)) if dof > 0 else 0.0
    sst = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 - float(resid @ resid) / sst if sst > 0 else 1.0
    return ExponentFit(float(coef[0]), stderr, r2, dropped)


def predicted_slope(theta: float) -> float:
    """Predicted exponent up to epsilon: 5/4 - theta (theta <= 1/2), 1 - theta/2 otherwise."""
    return 1.25 - theta if theta <= 0.5 else 1.0 - theta / 2.0


def build_tables(config: SweepConfig, series: HeckeSeries | None = None):
    """tau series covering 2 x_max + 2 H and the GL(3) provider on 2 x_max."""
    need = config.table_limit()
    if series is None or series.limit < need:
        series = compute_tau_series(need, cap=max(need, 10 ** 6))
    provider = gl3_provider(config.gl3_mode, 2 * config.x_max, series)
    return series, provider


def write_csv(records, path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            for r in records:
                w.writerow([r.X, r.H, repr(r.S), repr(r.abs_S), repr(r.trivial_ratio), f"{r.runtime_ms:.3f}"])
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    return path


def read_csv(path) -> list[SweepRecord]:
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    return [SweepRecord(int(r["X"]), int(r["H"]), float(r["S"]), float(r["trivial_ratio"]),
                        float(r["runtime_ms"])) for r in rows]


def sweep_csv_path(config: SweepConfig) -> Path:
    return Path(config.output_dir) / f"sweep_{config.gl3_mode}_theta{config.theta:g}.csv"


def sweep(config: SweepConfig, series: HeckeSeries | None = None, provider: GL3CoeffProvider | None = None,
          write: bool = True) -> list[SweepRecord]:
    """One record per grid X (computed in order; each cell is pure), written to CSV with a metadata sidecar."""
    if series is None or provider is None or provider.mode != config.gl3_mode:
        series, provider = build_tables(config, series)
    config.check_table(series.limit)
    records = [compute_S(X, config.H(X), series, series, provider) for X in config.grid()]
    if write:
        path = write_csv(records, sweep_csv_path(config))
        meta = {
            "theta": config.theta, "gl3_mode": config.gl3_mode, "seed": config.seed,
            "bumps": "V1 = V2 = exp(-1/(1-u^2)) on [1, 2]", "columns": list(CSV_COLUMNS),
        }
        path.with_suffix(".json").write_text(json.dumps(meta, indent=2, sort_keys=True), encoding="utf-8")
    return records


def sign_audit(series: HeckeSeries, provider: GL3CoeffProvider, cells: int = 10, seed: int = 0,
               x_range: tuple[int, int] = (2 ** 10, 2 ** 13), theta: float = 0.5) -> float:
    """Fraction of random cells where |lam_f| weights give a larger |S| than the signed weights."""
    rng = np.random.default_rng(seed)
    wins = 0
    for _ in range(cells):
        X = int(rng.integers(*x_range))
        H = int(np.ceil(X ** theta))
        signed = compute_S(X, H, series, series, provider)
        absolute = compute_S(X, H, series, series, provider, absolute_f=True)
        wins += absolute.abs_S > signed.abs_S
    return wins / cells
