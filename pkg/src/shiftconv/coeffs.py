"""Fourier coefficients: Ramanujan tau, its normalisation, and GL(3) providers.

The tau table is built from the Jacobi identity
``eta(z)^3 = sum_k (-1)^k (2k+1) q^{(k^2+k)/2 + 1/8}``, so that
``Delta = q * E^8`` with ``E`` the sparse cube-of-eta series.  The eighth power
is taken by three truncated squarings performed as big-integer products
(Kronecker substitution, gmpy2), which is exact and much faster in Python
than a dense-times-sparse convolution loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt, log

import gmpy2
import numpy as np

from .arith import build_factor_table, prime_power_split, sieve_multiplicative
from .errors import ArgumentError, CoefficientOverflowError, DegeneracyError, DomainError, RangeError, SizeError

WEIGHT = 12
TAU_CAP = 10**6
DIGIT_BITS = 128


@dataclass(frozen=True)
class HeckeSeries:
    """Exact tau(n) for ``1 <= n <= limit`` plus the normalised lambda(n).

    ``tau`` is an object array of Python ints (index 0 holds 0);
    ``lam`` is the float64 array ``tau(n) / n^{11/2}``.
    """

    limit: int
    tau: np.ndarray
    lam: np.ndarray = field(repr=False)
    weight: int = WEIGHT

    def __post_init__(self):
        self.lam.setflags(write=False)


def _eta_cube(N: int) -> dict[int, int]:
    """Nonzero coefficients of E = sum_k (-1)^k (2k+1) x^{k(k+1)/2} below x^N."""
    coeffs = {}
    k = 0
    while k * (k + 1) // 2 < N:
        coeffs[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
        k += 1
    return coeffs


def _pack(coeffs: dict[int, int], N: int, bits: int) -> gmpy2.mpz:
    """Evaluate a sparse integer polynomial of length N at 2^bits."""
    width = bits // 8
    pos = bytearray(N * width)
    neg = bytearray(N * width)
    for i, c in coeffs.items():
        target = pos if c > 0 else neg
        target[i * width : (i + 1) * width] = abs(c).to_bytes(width, "little")
    return gmpy2.mpz(int.from_bytes(pos, "little")) - gmpy2.mpz(int.from_bytes(neg, "little"))


def _signed(residue: gmpy2.mpz, total_bits: int) -> gmpy2.mpz:
    half = gmpy2.mpz(1) << (total_bits - 1)
    return residue - (half << 1) if residue >= half else residue


def _unpack(residue: gmpy2.mpz, N: int, bits: int) -> tuple[list[int], np.ndarray]:
    """Signed base-2^bits digits of a residue mod 2^(N*bits).

    Digits must be bounded by 2^(bits-2) in magnitude, which the callers
    guarantee; then a digit is negative exactly when its top bit is set and
    the borrow it causes is a plain +1 on the next digit.
    """
    words = bits // 64
    raw = int(residue).to_bytes(N * bits // 8, "little")
    arr = np.frombuffer(raw, dtype="<u8").reshape(N, words)
    hi = arr[:, words - 1].view(np.int64)
    carry = np.zeros(N, dtype=np.int64)
    carry[1:] = hi[:-1] < 0
    if words == 1:
        digits = hi + carry
        return digits.tolist(), digits.astype(np.float64)
    lo = arr[:, 0]
    exact = [(h << 64) + l + c for h, l, c in zip(hi.tolist(), lo.tolist(), carry.tolist())]
    # Re-split as (hi + 1) * 2^64 + (lo - 2^64) when lo has its top bit set so small negatives stay exact.
    lo_s = lo.view(np.int64)
    approx = (hi + (lo_s < 0)).astype(np.float64) * 2.0**64 + lo_s.astype(np.float64) + carry
    return exact, approx


def _square_trunc(value: gmpy2.mpz, N: int, bits: int) -> gmpy2.mpz:
    total = N * bits
    return _signed(gmpy2.f_mod_2exp(value * value, total), total)


def _max_d_times_power(N: int) -> float:
    """max_{n <= N} d(n) n^{5.5}, the Deligne bound for |tau(n)|."""
    d = sieve_multiplicative("d", N).values[1:].astype(np.float64)
    n = np.arange(1, N + 1, dtype=np.float64)
    return float(np.max(np.log2(d) + 5.5 * np.log2(n)))


def compute_tau_series(N: int, cap: int = TAU_CAP, digit_bits: int = DIGIT_BITS) -> HeckeSeries:
    """Exact tau(n) for 1 <= n <= N.

    ``digit_bits`` is the fixed signed width every intermediate coefficient
    must fit in.  The Deligne bound and an l1 bound for the intermediate
    powers are checked before multiplying, so an insufficient width raises
    :class:`CoefficientOverflowError` instead of wrapping.
    """
    if N < 1:
        raise SizeError("N must be >= 1")
    if N > cap:
        raise SizeError(f"N = {N} exceeds the tau cap {cap}")
    if digit_bits not in (64, 128):
        raise ArgumentError("digit_bits must be 64 or 128")
    room = digit_bits - 2
    if 4 * log(2 * N + 2, 2) >= room:
        raise CoefficientOverflowError(f"E^4 coefficients may exceed {digit_bits}-bit digits at N = {N}")
    if N > 1 and _max_d_times_power(N) >= room:
        raise CoefficientOverflowError(f"tau(n) for n <= {N} may exceed the signed {digit_bits}-bit range")

    # tau(n) is the coefficient of x^(n-1) in E^8.
    P = _pack(_eta_cube(N), N, digit_bits)
    for _ in range(3):
        P = _square_trunc(P, N, digit_bits)
    exact, _ = _unpack(gmpy2.f_mod_2exp(P, N * digit_bits), N, digit_bits)
    return hecke_series_from_tau(exact)


def hecke_series_from_tau(values) -> HeckeSeries:
    """HeckeSeries from exact tau(1..N); lambda uses correctly rounded float(tau(n))."""
    N = len(values)
    tau = np.empty(N + 1, dtype=object)
    tau[0] = 0
    tau[1:] = [int(t) for t in values]
    lam = np.zeros(N + 1)
    lam[1:] = np.fromiter((float(t) for t in tau[1:]), dtype=np.float64, count=N)
    lam[1:] /= np.arange(1, N + 1, dtype=np.float64) ** 5.5
    return HeckeSeries(N, tau, lam)


def tau_naive(N: int) -> list[int]:
    """Oracle: coefficients of q * prod_{n<N} (1 - q^n)^24, index 0..N."""
    poly = [0] * (N + 1)
    poly[0] = 1
    for n in range(1, N + 1):
        for _ in range(24):
            for i in range(N, n - 1, -1):
                poly[i] -= poly[i - n]
    return [0] + poly[:N]


def lam(series: HeckeSeries, n: int) -> float:
    """Normalised coefficient tau(n) / n^{11/2}."""
    if n < 1 or n > series.limit:
        raise RangeError(f"n = {n} outside 1..{series.limit}")
    return float(series.lam[n])


def rankin_selberg_profile(series: HeckeSeries, X_grid) -> list[tuple[int, float]]:
    """Ratios sum_{n <= X} lambda(n)^2 / X on a grid of X values."""
    grid = [int(x) for x in X_grid]
    if not grid:
        raise ArgumentError("empty grid")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ArgumentError("grid must be monotone")
    if grid[0] < 1 or grid[-1] > series.limit:
        raise RangeError("grid outside the series range")
    csum = np.cumsum(series.lam**2)
    return [(X, float(csum[X]) / X) for X in grid]


@dataclass(frozen=True)
class GL3CoeffProvider:
    """lambda_pi(1, n) for ``1 <= n <= limit`` as float64 (index 0 unused)."""

    mode: str
    limit: int
    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)


def _sym2_prime_power(lp: float, kmax: int) -> np.ndarray:
    """h_k(a^2, 1, a^-2) for k = 0..kmax where a + 1/a = lp.

    The elementary symmetric values are e1 = e2 = lp^2 - 1 and e3 = 1, giving
    the recursion h_k = e1 h_{k-1} - e2 h_{k-2} + h_{k-3}.
    """
    e = lp * lp - 1.0
    h = np.zeros(kmax + 1)
    h[0] = 1.0
    for k in range(1, kmax + 1):
        h[k] = e * h[k - 1] - (e * h[k - 2] if k >= 2 else 0.0) + (h[k - 3] if k >= 3 else 0.0)
    return h


def gl3_provider(mode: str, N: int, series: HeckeSeries | None = None) -> GL3CoeffProvider:
    """d3 values, or the symmetric-square lift of the tau form."""
    if N < 1:
        raise SizeError("N must be >= 1")
    if mode == "d3":
        values = sieve_multiplicative("d3", N).values.astype(np.float64)
        return GL3CoeffProvider("d3", N, values)
    if mode != "sym2":
        raise ArgumentError(f"unknown GL(3) mode {mode!r}")
    if series is None or series.limit < N:
        raise ArgumentError("sym2 mode needs a HeckeSeries covering 1..N")

    table = build_factor_table(N)
    p, e, cof = prime_power_split(table)
    primes = np.nonzero(table.spf == np.arange(N + 1))[0]
    primes = primes[primes >= 2]
    lp = series.lam[primes]
    if np.any(np.abs(lp) > 2.0 + 1e-12):
        bad = int(primes[np.argmax(np.abs(lp))])
        raise DomainError(f"|lambda_f({bad})| exceeds 2")

    # local[n] = h_e(p) for n = p^e * c, p = spf(n); exponents >= 2 only occur for p <= sqrt N.
    local = np.ones(N + 1)
    single = e == 1
    local[single] = series.lam[p[single]] ** 2 - 1.0
    multi = e >= 2
    if multi.any():
        root = isqrt(N)
        hk = np.zeros((root + 1, int(e.max()) + 1))
        for q in primes[primes <= root].tolist():
            hk[q] = _sym2_prime_power(float(series.lam[q]), hk.shape[1] - 1)
        local[multi] = hk[p[multi], e[multi]]
    values = np.ones(N + 1)
    values[0] = 0.0
    while True:
        new = local * values[cof]
        new[0], new[1] = 0.0, 1.0
        if np.array_equal(new, values):
            break
        values = new
    return GL3CoeffProvider("sym2", N, values)


@dataclass(frozen=True)
class GrowthFit:
    slope: float
    intercept: float
    residuals: np.ndarray


def gl3_average_growth(provider: GL3CoeffProvider, X_grid) -> GrowthFit:
    """Least-squares slope of log sum_{n <= X} values[n]^2 against log X."""
    grid = np.asarray(sorted(set(int(x) for x in X_grid)), dtype=np.int64)
    if grid.size < 3:
        raise DegeneracyError("need at least 3 distinct grid points")
    if grid[0] < 1 or grid[-1] > provider.limit:
        raise RangeError("grid outside the provider range")
    csum = np.cumsum(provider.values**2)
    y = np.log(csum[grid])
    x = np.log(grid.astype(np.float64))
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    return GrowthFit(float(slope), float(intercept), y - (slope * x + intercept))
