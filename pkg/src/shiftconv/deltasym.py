"""Smooth delta-symbol expansion of the indicator [n = m].

With omega a smooth bump on [Q/2, Q] whose integer values sum to 1,

    Delta_q(u) = sum_r (q r)^-1 (omega(q r) - omega(|u| / (q r)))

gives the exact identity [v = 0] = sum_{q <= Q} c_q(v) Delta_q(v).  Writing
Delta_q as a Fourier integral,

    Delta_q(u) = (q Q)^-1 int psi(q, x) e(u x / (q Q)) dx,
    psi(q, x)  = int Delta_q(u) cut(u / 2L) e(-u x / (q Q)) du,

turns it into the integral form evaluated by ``reconstruct_delta_integral``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, log, sqrt

import numpy as np

from .bump import PlateauCutoff, SmoothBump, normalized_sum_bump
from .errors import AccuracyError, ArgumentError, RangeError
from .expsums import ramanujan_sum
from .transforms.quadrature import adaptive_gk15, gauss_panels, half_period_breaks

__all__ = [
    "DeltaScheme",
    "PsiReport",
    "SmoothBump",
    "build_scheme",
    "psi",
    "psi_grid",
    "psi_property_report",
    "reconstruct_delta_discrete",
    "reconstruct_delta_integral",
]

# Default half-width of the x-integration in the integral form is L**X_RANGE_EXPONENT.
X_RANGE_EXPONENT = 1.0 / 3.0


@dataclass(frozen=True)
class DeltaScheme:
    """State of the delta expansion for |n - m| <= 2L."""

    L: int
    Q: int
    omega: SmoothBump
    cutoff: PlateauCutoff
    delta_q_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def constant(self, q: int) -> float:
        """sum_r omega(q r) / (q r), the value of Delta_q near 0."""
        key = ("const", q)
        if key not in self.delta_q_cache:
            m = q * np.arange(1, self.Q // q + 1, dtype=np.float64)
            self.delta_q_cache[key] = float(np.sum(self.omega(m) / m)) if m.size else 0.0
        return self.delta_q_cache[key]

    def delta_q(self, q: int, u) -> np.ndarray:
        """Delta_q(u), vectorised over u; identically 0 for q > Q."""
        u = np.abs(np.asarray(u, dtype=np.float64))
        if q > self.Q:
            return np.zeros_like(u)
        out = np.full(u.shape, self.constant(q))
        if u.size == 0:
            return out
        Q = self.Q
        rmax = int(ceil(2.0 * float(u.max()) / (q * Q))) + 1
        for r in range(1, rmax + 1):
            qr = q * r
            t = u / qr
            sel = (t > 0.5 * Q) & (t < Q)
            if sel.any():
                out[sel] -= self.omega(t[sel]) / qr
        return out

    def weighted_delta(self, q: int, u) -> np.ndarray:
        """Delta_q(u) * cut(u / 2L), the function whose Fourier transform is psi."""
        return self.delta_q(q, u) * self.cutoff(np.asarray(u, dtype=np.float64) / (2.0 * self.L))


def build_scheme(L: int) -> DeltaScheme:
    """Scheme with Q = 2 ceil(sqrt L) and omega the normalised bump on [Q/2, Q]."""
    if L < 16:
        raise ArgumentError("L must be >= 16")
    Q = 2 * int(ceil(sqrt(L)))
    return DeltaScheme(int(L), Q, normalized_sum_bump(Q / 2, Q), PlateauCutoff())


def _check_pair(n: int, m: int, scheme: DeltaScheme) -> int:
    v = int(n) - int(m)
    if abs(v) > 2 * scheme.L:
        raise RangeError(f"|n - m| = {abs(v)} exceeds 2L = {2 * scheme.L}")
    return v


def _ramanujan_row(v: int, Q: int) -> np.ndarray:
    """c_q(v) for q = 1..Q (index 0 unused)."""
    out = np.zeros(Q + 1)
    for q in range(1, Q + 1):
        out[q] = ramanujan_sum(q, v)
    return out


def reconstruct_delta_discrete(n: int, m: int, scheme: DeltaScheme) -> float:
    """sum_{q <= Q} c_q(n - m) Delta_q(n - m); equals [n = m] up to rounding."""
    v = _check_pair(n, m, scheme)
    c = _ramanujan_row(v, scheme.Q)
    d = np.array([scheme.delta_q(q, v) for q in range(1, scheme.Q + 1)]).ravel()
    return float(np.dot(c[1:], d))


def psi(q: int, x: float, scheme: DeltaScheme, tol: float = 1e-9, max_cells: int = 400_000) -> float:
    """psi(q, x) by adaptive GK15 over |u| <= 4L with half-period cells.

    Raises :class:`AccuracyError` when the quadrature misses ``tol`` (relative)
    or when the imaginary part, zero by evenness, exceeds 1e-8.
    """
    if not 1 <= q <= scheme.Q:
        raise RangeError(f"q must be in 1..{scheme.Q}")
    x = float(x)
    L4 = 4.0 * scheme.L
    rate = abs(x) / (q * scheme.Q)
    breaks = half_period_breaks(lambda u: np.full_like(u, rate), -L4, L4, min_cells=64, max_cells=max_cells)

    def f(u):
        return scheme.weighted_delta(q, u) * np.exp(-2j * np.pi * u * x / (q * scheme.Q))

    res = adaptive_gk15(f, -L4, L4, breaks, rtol=tol, atol=1e-13, max_cells=max_cells)
    if abs(res.value.imag) > 1e-8:
        raise AccuracyError("imaginary part of psi above 1e-8", res.value, abs(res.value.imag))
    return float(res.value.real)


def psi_grid(q: int, xs, scheme: DeltaScheme, xmax: float | None = None, order: int = 20) -> np.ndarray:
    """psi(q, x) for an array of x by fixed composite Gauss-Legendre in u.

    Panels span at most three periods of the fastest phase and a twelfth of the
    scale q Q on which Delta_q varies; the integrand is even, so only u >= 0
    is integrated.
    """
    xs = np.asarray(xs, dtype=np.float64)
    top = float(np.max(np.abs(xs))) if xmax is None else float(xmax)
    qQ = q * scheme.Q
    width = qQ / 12.0
    if top > 0:
        width = min(width, 3.0 * qQ / top)
    u, w = gauss_panels(0.0, 4.0 * scheme.L, width, order)
    fw = 2.0 * scheme.weighted_delta(q, u) * w
    out = np.empty_like(xs)
    step = max(1, 2_000_000 // max(1, u.size))
    for s in range(0, xs.size, step):
        blk = xs.ravel()[s : s + step]
        out.ravel()[s : s + step] = np.cos(2.0 * np.pi * np.outer(blk, u) / qQ) @ fw
    return out


def reconstruct_delta_integral(n, m, scheme: DeltaScheme, x_range: float | None = None,
                               order: int = 20) -> np.ndarray | float:
    """(1/Q) sum_q q^-1 c_q(n - m) int_{|x| <= x_range} psi(q, x) e((n - m) x / (q Q)) dx.

    ``n`` and ``m`` may be arrays of the same shape.  The default range is
    L^(1/3); psi is tabulated once per q on Gauss panels in x that resolve
    both psi and the target character.
    """
    n_arr, m_arr = np.broadcast_arrays(np.asarray(n, dtype=np.int64), np.asarray(m, dtype=np.int64))
    v = (n_arr - m_arr).ravel()
    if v.size and np.max(np.abs(v)) > 2 * scheme.L:
        raise RangeError(f"|n - m| exceeds 2L = {2 * scheme.L}")
    T = scheme.L ** X_RANGE_EXPONENT if x_range is None else float(x_range)
    Q, L = scheme.Q, scheme.L
    vmax = float(np.max(np.abs(v))) if v.size else 0.0
    c = np.array([_ramanujan_row(int(val), Q) for val in v]).reshape(v.size, Q + 1)
    total = np.zeros(v.size)
    for q in range(1, Q + 1):
        qQ = q * Q
        freq = (4.0 * L + vmax) / qQ  # cycles per unit x
        width = min(1.0, T / 4.0, 3.0 / freq)
        x, wx = gauss_panels(0.0, T, width, order)
        ps = psi_grid(q, x, scheme, xmax=T, order=order)
        integ = 2.0 * (np.cos(2.0 * np.pi * np.outer(v, x) / qQ) @ (ps * wx))
        total += c[:, q] * integ / qQ
    out = total.reshape(n_arr.shape)
    return float(out) if out.ndim == 0 else out


def sinc_kernel_oracle(v, scheme: DeltaScheme, x_range: float, order: int = 20) -> np.ndarray:
    """Same truncated integral form with the x-integration done in closed form.

    int_{-T}^{T} e(-(u - v) x / (qQ)) dx = 2T sinc(2T (u - v) / (qQ)), so only a
    u-quadrature remains.  Used to cross-check ``reconstruct_delta_integral``.
    """
    v = np.atleast_1d(np.asarray(v, dtype=np.int64))
    Q, L, T = scheme.Q, scheme.L, float(x_range)
    total = np.zeros(v.size)
    for q in range(1, Q + 1):
        qQ = q * Q
        u, w = gauss_panels(-4.0 * L, 4.0 * L, min(qQ / 12.0, 3.0 * qQ / T), order)
        fw = scheme.weighted_delta(q, u) * w
        K = 2.0 * T * np.sinc(2.0 * T * (u[:, None] - v[None, :]) / qQ)
        c = np.array([ramanujan_sum(q, int(val)) for val in v])
        total += c * (fw @ K) / qQ
    return total


@dataclass(frozen=True)
class RegimeStats:
    name: str
    qs: tuple
    max_abs_psi_minus_1: float  # over the sampled |x| <= x_small
    decay_slope: float  # least-squares slope of log|psi| vs log|x| on [1, 10]
    derivative_constants: tuple  # fitted C for j = 1, 2


@dataclass(frozen=True)
class PsiReport:
    Q: int
    eps: float
    regimes: tuple
    samples: tuple  # (q, x, psi)


def psi_property_report(scheme: DeltaScheme, sample_grid=None, eps: float = 0.1, step: float = 1e-4) -> PsiReport:
    """Numerical profile of psi in the small, intermediate and large q regimes.

    For each regime: max |psi - 1| on |x| <= Q^-eps, the fitted decay slope
    in |x| on [1, 10], and the smallest C with
    |x^j d^j psi / dx^j| <= C min(Q/q, 1/|x|) log Q on the grid (j = 1, 2),
    derivatives by central differences with the given step.
    """
    Q = scheme.Q
    if sample_grid is None:
        qs = sorted({1, 2, 4, max(1, int(Q ** (1 - eps)) // 2), int(Q ** (1 - eps)), Q // 2, Q})
        xs = np.concatenate([np.linspace(0.0, Q ** -eps, 5), np.geomspace(1.0, 10.0, 9)])
        sample_grid = [(q, float(x)) for q in qs for x in xs]
    by_q: dict[int, list[float]] = {}
    for q, x in sample_grid:
        by_q.setdefault(int(q), []).append(float(x))
    cut_small = Q ** (1 - eps)
    regimes = {"small": [], "intermediate": [], "large": []}
    for q in by_q:
        if q <= cut_small / 2:
            regimes["small"].append(q)
        elif q <= cut_small:
            regimes["intermediate"].append(q)
        else:
            regimes["large"].append(q)
    samples = []
    stats = []
    logQ = log(Q)
    for name, qs in regimes.items():
        dev, slopes, c1, c2 = 0.0, [], 0.0, 0.0
        for q in sorted(qs):
            xs = np.array(sorted(set(by_q[q])))
            hh = np.array([-step, 0.0, step])
            ev = psi_grid(q, (xs[:, None] + hh[None, :]).ravel(), scheme).reshape(len(xs), 3)
            vals = ev[:, 1]
            samples.extend((q, float(x), float(p)) for x, p in zip(xs, vals))
            small = np.abs(xs) <= Q ** -eps
            if small.any():
                dev = max(dev, float(np.max(np.abs(vals[small] - 1.0))))
            tail = (np.abs(xs) >= 1.0) & (np.abs(xs) <= 10.0) & (np.abs(vals) > 0)
            if tail.sum() >= 2:
                slopes.append(float(np.polyfit(np.log(np.abs(xs[tail])), np.log(np.abs(vals[tail])), 1)[0]))
            d1 = (ev[:, 2] - ev[:, 0]) / (2 * step)
            d2 = (ev[:, 2] - 2 * ev[:, 1] + ev[:, 0]) / step**2
            nz = np.abs(xs) > 0
            if nz.any():
                scale = np.minimum(Q / q, 1.0 / np.abs(xs[nz])) * logQ
                c1 = max(c1, float(np.max(np.abs(xs[nz] * d1[nz]) / scale)))
                c2 = max(c2, float(np.max(np.abs(xs[nz] ** 2 * d2[nz]) / scale)))
        slope = float(max(slopes)) if slopes else float("nan")
        stats.append(RegimeStats(name, tuple(sorted(qs)), dev, slope, (c1, c2)))
    return PsiReport(Q, eps, tuple(stats), tuple(samples))
