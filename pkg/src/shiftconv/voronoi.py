"""Two-sided numerical checks of the GL(2) and d3 Voronoi summation formulas.

GL(2), weight k holomorphic, u(x) = bump(x/X):

    sum_n lam(n) e(an/q) u(n)
        = (2 pi i^k / q) sum_n lam(n) e(-abar n/q) int u(x) J_{k-1}(4 pi sqrt(nx)/q) dx.

d3, phi(x) = bump(x/X): the left side sum_n d3(n) e(an/q) phi(n) equals
three main terms in phi~(1), phi~'(1), phi~''(1) weighted by Ramanujan sums
c_{q/n1}(abar), plus

    q sum_{+-} sum_{n1 | q} sum_{n2} w(n1, n2) / (n1 n2) S(abar, +-n2; q/n1) G+-(n1^2 n2 / q^3),

with w(n1, n2) the nested sum over n3 | n1, n4 | n1/n3 of sigma00(n1/(n3 n4), n2).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import gcd, log

import numpy as np

from .arith import divisor_count, divisors, mod_inverse, sieve_multiplicative
from .bump import SmoothBump
from .coeffs import HeckeSeries, compute_tau_series
from .errors import ArgumentError, RangeError, TruncationError
from .expsums import _kloosterman_row, ramanujan_sum
from .transforms.mellin import g_components, mellin_profile
from .transforms.quadrature import gauss_panels
from .transforms.special import bessel_j

EULER_GAMMA = 0.5772156649015329
STIELTJES_GAMMA1 = -0.07281584548367673
STANDARD_BUMP = SmoothBump(1.0, 2.0)
GL2_TAIL_TOL = 1e-8
D3_TAIL_TOL = 1e-10
MAX_D3_DUAL = 4096
# Voronoi main terms: "corrected" is the residue of zeta^3 phi~ at s = 1, "printed" is half of it.
MAIN_TERM_SCALE = {"corrected": 1.0, "printed": 0.5}


@dataclass(frozen=True)
class VoronoiReport:
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    dual_terms_used: int
    main_terms: complex
    wall_time_ms: float
    tail: float = 0.0  # size of the last block of dual terms kept


def _report(lhs, rhs, used, main, t0, tail) -> VoronoiReport:
    err = abs(lhs - rhs)
    return VoronoiReport(complex(lhs), complex(rhs), err, err / max(abs(lhs), 1e-30), int(used),
                         complex(main), 1e3 * (time.perf_counter() - t0), float(tail))


def _abar(a: int, q: int) -> int:
    if gcd(a, q) != 1:
        raise ArgumentError(f"gcd(a, q) = {gcd(a, q)} > 1")
    return mod_inverse(a % q, q) if q > 1 else 0


def _dilate(bump: SmoothBump, X: float) -> SmoothBump:
    """x -> bump(x/X) as a bump on the dilated support."""
    return SmoothBump(bump.a * X, bump.b * X, bump.scale)


def _e(t) -> np.ndarray:
    return np.exp(2j * np.pi * np.asarray(t, dtype=np.float64))


# ------------------------------------------------------------------ GL(2)

def gl2_rule_length(q: int, X: float) -> float:
    """Dual length 10 q^2 (qX)^0.05 / X of the essential support."""
    return 10.0 * q * q * (q * X) ** 0.05 / X


def gl2_dual_terms(q: int, a: int, X: float, n_max: int, bump: SmoothBump = STANDARD_BUMP,
                   k: int = 12, series: HeckeSeries | None = None) -> np.ndarray:
    """The first ``n_max`` terms of the GL(2) dual sum, including the 2 pi i^k / q factor."""
    abar = _abar(a, q)
    if series is None:
        series = compute_tau_series(n_max)
    if n_max > series.limit:
        raise RangeError(f"dual terms up to {n_max} exceed the series limit {series.limit}")
    u = _dilate(bump, X)
    rate = np.sqrt(n_max / u.a) / q  # turns of the Bessel phase per unit x, at its fastest
    width = min((u.b - u.a) / 16.0, 2.0 / max(rate, 1e-12))
    x, w = gauss_panels(u.a, u.b, width, order=20)
    wu = w * u(x)
    n = np.arange(1, n_max + 1)
    out = np.empty(n_max, dtype=np.complex128)
    chunk = max(1, 2_000_000 // x.size)
    for i in range(0, n_max, chunk):
        nn = n[i:i + chunk]
        arg = 4.0 * np.pi * np.sqrt(np.outer(nn, x)) / q
        out[i:i + chunk] = bessel_j(k - 1, arg.ravel()).reshape(arg.shape) @ wu
    pref = 2.0 * np.pi * (1j ** k) / q
    return pref * series.lam[1:n_max + 1] * _e(-((abar * n) % q) / q) * out


def _tail_count(terms: np.ndarray, tol: float) -> int:
    """Smallest count c with sum_{n > c} |t_n| <= tol * sum |t_n|."""
    mags = np.abs(terms)
    tail = np.concatenate([np.cumsum(mags[::-1])[::-1], [0.0]])
    return int(np.argmax(tail <= tol * max(mags.sum(), 1e-300)))


def gl2_voronoi_check(q: int, a: int, X: float, bump: SmoothBump = STANDARD_BUMP, k: int = 12,
                      series: HeckeSeries | None = None, tail_tol: float = GL2_TAIL_TOL) -> VoronoiReport:
    """Both sides of the GL(2) formula; the dual sum grows until its last quarter is below ``tail_tol``."""
    t0 = time.perf_counter()
    _abar(a, q)  # validates gcd(a, q) = 1
    u = _dilate(bump, X)
    lo, hi = int(np.floor(u.a)) + 1, int(np.ceil(u.b)) - 1
    if series is None:
        series = compute_tau_series(max(hi, 4096))
    if hi > series.limit:
        raise RangeError(f"X * support reaches {hi}, beyond the series limit {series.limit}")
    n = np.arange(lo, hi + 1)
    lhs = np.sum(series.lam[lo:hi + 1] * _e(((a * n) % q) / q) * u(n.astype(np.float64)))
    n_max = max(32, int(np.ceil(gl2_rule_length(q, X))))
    while True:
        n_max = min(n_max, series.limit)
        terms = gl2_dual_terms(q, a, X, n_max, bump, k, series)
        total = terms.sum()
        tail = float(np.abs(terms[3 * n_max // 4:]).sum())
        if tail <= tail_tol * max(abs(total), 1e-300):
            break
        if n_max == series.limit:
            raise TruncationError(f"dual sum not converged within {n_max} terms", tail, 2 * n_max)
        n_max *= 2
    used = _tail_count(terms, tail_tol)
    return _report(lhs, total, used, 0.0, t0, tail)


# ------------------------------------------------------------------ d3

def p1_poly(n1: int, q: int) -> float:
    """P1(n1, q) of the d3 main term."""
    tau = divisor_count(n1)
    sl = sum(log(d) for d in divisors(n1))
    return 5.0 / 3.0 * log(n1) - 3.0 * log(q) + 3.0 * EULER_GAMMA - sl / (3.0 * tau)


def p2_poly(n1: int, q: int) -> float:
    """P2(n1, q) of the d3 main term."""
    g, g1 = EULER_GAMMA, STIELTJES_GAMMA1
    tau = divisor_count(n1)
    l1, lq = log(n1), log(q)
    sl = sum(log(d) for d in divisors(n1))
    sl2 = sum(log(d) ** 2 for d in divisors(n1))
    return (l1 ** 2 - 5.0 * lq * l1 + 4.5 * lq ** 2 + 3.0 * g * g - 3.0 * g1 + 7.0 * g * l1 - 9.0 * g * lq
            + ((l1 + lq - 5.0 * g) * sl - 1.5 * sl2) / tau)


def d3_main_terms(q: int, a: int, X: float, bump: SmoothBump = STANDARD_BUMP,
                  variant: str = "corrected") -> complex:
    """Sum over n1 | q of n1 d(n1) c_{q/n1}(abar) (phi~ P2 + phi~' P1 + phi~''/2) / q^2, scaled by variant."""
    if variant not in MAIN_TERM_SCALE:
        raise ArgumentError(f"variant must be one of {sorted(MAIN_TERM_SCALE)}")
    abar = _abar(a, q)
    m0, m1, m2 = mellin_profile(_dilate(bump, X)).at_one
    total = 0.0
    for n1 in divisors(q):
        c = ramanujan_sum(q // n1, abar)
        if c == 0:
            continue
        total += n1 * divisor_count(n1) * c * (m0 * p2_poly(n1, q) + m1 * p1_poly(n1, q) + 0.5 * m2)
    return complex(MAIN_TERM_SCALE[variant] * total / (q * q))


def _coprime_divisor_conv(k1: int, N: int, dtab: np.ndarray) -> np.ndarray:
    """sigma00(k1, n) for n <= N: sum over d2 | n coprime to k1 of d(n/d2)."""
    out = np.zeros(N + 1, dtype=np.int64)
    for d2 in range(1, N + 1):
        if gcd(d2, k1) == 1:
            out[d2::d2] += dtab[1:N // d2 + 1]
    return out


def d3_dual_weights(n1: int, N: int) -> np.ndarray:
    """w(n1, n2) for n2 = 0..N (index 0 unused)."""
    dtab = sieve_multiplicative("d", N).values
    w = np.zeros(N + 1, dtype=np.int64)
    cache = {}
    for n3 in divisors(n1):
        for n4 in divisors(n1 // n3):
            k1 = n1 // (n3 * n4)
            if k1 not in cache:
                cache[k1] = _coprime_divisor_conv(k1, N, dtab)
            w += cache[k1]
    return w


def d3_dual_terms(q: int, a: int, X: float, N: int, bump: SmoothBump = STANDARD_BUMP,
                  sigma: float = 0.0, T: float = 100.0) -> dict:
    """Dual terms for n2 <= N keyed by (n1, sign)."""
    abar = _abar(a, q)
    profile = mellin_profile(_dilate(bump, X))
    n2 = np.arange(1, N + 1)
    out = {}
    for n1 in divisors(q):
        r = q // n1
        w = d3_dual_weights(n1, N)[1:]
        G = g_components(n1 * n1 * n2 / q ** 3, profile, sigma, T)
        for sign in (1, -1):
            kl = _kloosterman_row(sign * n2, abar % r if r > 1 else 0, r)
            out[(n1, sign)] = q * w * kl * G.pm(sign) / (n1 * n2)
    return out


def d3_voronoi_check(q: int, a: int, X: float, bump: SmoothBump = STANDARD_BUMP, sigma: float = 0.0,
                     T: float = 100.0, variant: str = "corrected", tail_tol: float = D3_TAIL_TOL,
                     max_dual: int = MAX_D3_DUAL) -> VoronoiReport:
    """Both sides of the d3 formula; n2 doubles until the last half of every dual block is below ``tail_tol``."""
    t0 = time.perf_counter()
    if q > 12:
        raise ArgumentError("d3 check is limited to q <= 12")
    _abar(a, q)
    phi = _dilate(bump, X)
    lo, hi = int(np.floor(phi.a)) + 1, int(np.ceil(phi.b)) - 1
    d3 = sieve_multiplicative("d3", hi).values
    n = np.arange(lo, hi + 1)
    lhs = np.sum(d3[lo:hi + 1] * _e(((a * n) % q) / q) * phi(n.astype(np.float64)))
    main = d3_main_terms(q, a, X, bump, variant)
    N = 256
    while True:
        blocks = d3_dual_terms(q, a, X, N, bump, sigma, T)
        scale = max(sum(np.abs(b).sum() for b in blocks.values()), 1e-300)
        tail = sum(np.abs(b[N // 2:]).sum() for b in blocks.values())
        if tail <= tail_tol * scale or N >= max_dual:
            break
        N *= 2
    dual = sum(b.sum() for b in blocks.values())
    used = max(_tail_count(b, tail_tol) for b in blocks.values())
    return _report(lhs, main + dual, used, main, t0, tail / scale)


def dual_length_probe(kind: str, q: int, X: float, tol: float = 1e-8, a: int = 1,
                      series: HeckeSeries | None = None) -> int:
    """Smallest dual truncation with relative tail <= ``tol``."""
    if kind == "gl2":
        n_max = 128
        if series is None:
            series = compute_tau_series(max(4096, int(2 * X) + 2))
        while True:
            terms = gl2_dual_terms(q, a, X, min(n_max, series.limit), series=series)
            c = _tail_count(terms, tol)
            if c < 0.75 * len(terms) or n_max >= series.limit:
                return c
            n_max *= 2
    if kind == "d3":
        N = 256
        while True:
            blocks = d3_dual_terms(q, a, X, N)
            c = max(_tail_count(b, tol) for b in blocks.values())
            if c < N // 2 or N >= MAX_D3_DUAL:
                return c
            N *= 2
    raise ArgumentError("kind must be 'gl2' or 'd3'")


__all__ = [
    "EULER_GAMMA",
    "STIELTJES_GAMMA1",
    "VoronoiReport",
    "d3_dual_terms",
    "d3_dual_weights",
    "d3_main_terms",
    "d3_voronoi_check",
    "dual_length_probe",
    "gl2_dual_terms",
    "gl2_voronoi_check",
    "p1_poly",
    "p2_poly",
]
