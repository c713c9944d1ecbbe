"""Sieves, factorization, multiplicative functions and modular arithmetic.

Everything downstream (coefficient tables, character sums, the delta
symbol) reads from the tables built here, so they are built once,
vectorised with numpy, and never mutated afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from .errors import ArgumentError, NotInvertibleError, RangeError, SizeError

MAX_SIEVE = 2**31
# Soft memory cap: spf (int64) plus a few work arrays of the same length.
MEMORY_CAP_ENTRIES = 400_000_000

KINDS = ("d3", "mobius", "phi", "d")


@dataclass(frozen=True)
class FactorTable:
    """Smallest-prime-factor table: ``spf[n]`` for ``0 <= n <= limit``."""

    limit: int
    spf: np.ndarray

    def __post_init__(self):
        self.spf.setflags(write=False)

    def is_prime(self, n: int) -> bool:
        return n >= 2 and int(self.spf[n]) == n


@dataclass(frozen=True)
class MultiplicativeTable:
    """Values of a multiplicative function on ``1..limit`` (index 0 unused)."""

    kind: str
    limit: int
    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)

    def __getitem__(self, n):
        return self.values[n]


def build_factor_table(N: int) -> FactorTable:
    """Smallest prime factor of every integer up to ``N``.

    ``spf[0]`` is 0 and ``spf[1]`` is 1 by convention.
    """
    if N < 1 or N > MAX_SIEVE:
        raise SizeError(f"sieve limit must be in 1..2^31, got {N}")
    if N + 1 > MEMORY_CAP_ENTRIES:
        raise SizeError(f"sieve limit {N} exceeds memory cap of {MEMORY_CAP_ENTRIES} entries")
    spf = np.zeros(N + 1, dtype=np.int64)
    spf[1] = 1
    for p in range(2, isqrt(N) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
            spf[p] = p
    rest = spf == 0
    rest[0] = False
    spf[rest] = np.nonzero(rest)[0]
    return FactorTable(N, spf)


def factorize(n: int, table: FactorTable) -> list[tuple[int, int]]:
    """Prime factorization of ``n`` as ``[(p, e), ...]`` with increasing ``p``."""
    if n < 1 or n > table.limit:
        raise RangeError(f"{n} outside factor table range 1..{table.limit}")
    out: list[tuple[int, int]] = []
    spf = table.spf
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def prime_power_split(table: FactorTable):
    """For every n >= 2: its smallest prime p, the exponent e of p, and n / p^e."""
    N = table.limit
    n = np.arange(N + 1, dtype=np.int64)
    p = table.spf.copy()
    p[0] = 1
    cof = n.copy()
    cof[0] = 1
    e = np.zeros(N + 1, dtype=np.int64)
    active = p > 1
    while active.any():
        idx = np.nonzero(active)[0]
        cof[idx] //= p[idx]
        e[idx] += 1
        active[idx] = (cof[idx] % p[idx]) == 0
    return p, e, cof


def sieve_multiplicative(kind: str, N: int, table: FactorTable | None = None) -> MultiplicativeTable:
    """Tabulate d3, mobius, phi or d on ``1..N``.

    Values are built from the smallest-prime-factor split ``n = p^e * c``
    with ``p`` not dividing ``c``: ``f(n) = f(p^e) f(c)``.  Iterating the
    gather ``f <- f(p^e) * f[c]`` converges after omega_max(N) rounds.
    """
    if kind not in KINDS:
        raise ArgumentError(f"unknown multiplicative kind {kind!r}; expected one of {KINDS}")
    if N < 1:
        raise SizeError("N must be >= 1")
    if table is None or table.limit < N:
        table = build_factor_table(N)
    p, e, cof = prime_power_split(table)
    p, e, cof = p[: N + 1], e[: N + 1], cof[: N + 1]
    if kind == "d3":
        local = (e + 1) * (e + 2) // 2
    elif kind == "d":
        local = e + 1
    elif kind == "mobius":
        local = np.where(e == 0, 1, np.where(e == 1, -1, 0))
    else:
        local = np.where(e == 0, 1, (p - 1) * p ** np.maximum(e - 1, 0))
    local = local.astype(np.int64)
    local[0] = 0
    local[1] = 1
    values = np.ones(N + 1, dtype=np.int64)
    values[0] = 0
    while True:
        new = local * values[cof]
        new[0], new[1] = 0, 1
        if np.array_equal(new, values):
            break
        values = new
    return MultiplicativeTable(kind, N, values)


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of ``n`` by trial division."""
    if n < 1:
        raise RangeError("divisors need n >= 1")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def mobius(n: int) -> int:
    """Mobius function by trial division; fine for the moduli used here."""
    if n < 1:
        raise RangeError("mobius needs n >= 1")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def euler_phi(n: int) -> int:
    if n < 1:
        raise RangeError("phi needs n >= 1")
    result, p, m = n, 2, n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisor_count(n: int) -> int:
    return len(divisors(n))


def mod_inverse(a: int, q: int) -> int:
    """Inverse of ``a`` modulo ``q`` by the extended Euclidean algorithm."""
    if q < 2:
        raise ArgumentError("modulus must be >= 2")
    r0, r1 = a % q, q
    s0, s1 = 1, 0
    while r1:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    if r0 != 1:
        raise NotInvertibleError(f"{a} is not invertible modulo {q} (gcd {r0})")
    return s0 % q


def inverse_table(q: int) -> np.ndarray:
    """``inv[x]`` = inverse of x mod q for units x, 0 elsewhere; ``inv[0] = 0`` for q = 1."""
    inv = np.zeros(q, dtype=np.int64)
    if q == 1:
        return inv
    for x in range(1, q):
        if gcd(x, q) == 1:
            inv[x] = mod_inverse(x, q)
    return inv


def units(q: int) -> np.ndarray:
    """Reduced residues modulo q; for q = 1 the single class 0."""
    if q == 1:
        return np.zeros(1, dtype=np.int64)
    x = np.arange(q, dtype=np.int64)
    return x[np.gcd(x, q) == 1]


def gcd_lcm(d: int, dp: int) -> tuple[int, int]:
    if d < 1 or dp < 1:
        raise RangeError("gcd_lcm needs positive arguments")
    g = gcd(d, dp)
    return g, d // g * dp
