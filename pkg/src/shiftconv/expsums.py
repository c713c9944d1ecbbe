"""Ramanujan and Kloosterman sums, the composite character sum and correlation counts.

Every fast form here has a brute-force twin so the two can be compared
directly.  Accumulation uses ``math.fsum`` on real and imaginary parts,
which is correctly rounded and therefore at least as good as Kahan
summation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum, gcd

import numpy as np

from .arith import divisor_count, divisors, inverse_table, mobius, units
from .errors import ArgumentError, RangeError, WrongBranchError

TWO_PI = 2.0 * np.pi


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ArgumentError(f"sign must be +1 or -1, got {sign}")
    return sign


def _esum(phases: np.ndarray) -> complex:
    """Sum of e(t) over an array of phases t (in turns), correctly rounded per component."""
    ang = TWO_PI * np.asarray(phases, dtype=np.float64)
    return complex(fsum(np.cos(ang)), fsum(np.sin(ang)))


def _frac(num: np.ndarray, den: int) -> np.ndarray:
    """num/den reduced to [0, 1) exactly before converting to float."""
    return np.mod(num, den).astype(np.float64) / den


def ramanujan_sum(q: int, n: int) -> int:
    """c_q(n) = sum over d | gcd(q, n) of d * mu(q/d)."""
    if q < 1:
        raise RangeError("q must be >= 1")
    g = gcd(q, n) if n else q
    return sum(d * mobius(q // d) for d in divisors(g))


def ramanujan_sum_direct(q: int, n: int) -> complex:
    """Oracle: sum over units a mod q of e(an/q)."""
    if q < 1:
        raise RangeError("q must be >= 1")
    a = units(q)
    return _esum(_frac(a * n, q))


def kloosterman(a: int, b: int, q: int) -> complex:
    """S(a, b; q) = sum over units x mod q of e((a x + b xbar)/q), evaluated directly."""
    if q < 1:
        raise RangeError("q must be >= 1")
    if q == 1:
        return 1.0 + 0.0j
    x = units(q)
    inv = inverse_table(q)[x]
    return _esum(_frac(a * x + b * inv, q))


def _kloosterman_row(bvals: np.ndarray, b: int, q: int) -> np.ndarray:
    """S(a, b; q) for every a in ``bvals`` (vectorised direct sums)."""
    if q == 1:
        return np.ones(len(bvals), dtype=np.complex128)
    x = units(q)
    inv = inverse_table(q)[x]
    ph = _frac(np.outer(bvals, x) + b * inv[None, :], q)
    ang = TWO_PI * ph
    return np.array([complex(fsum(c), fsum(s)) for c, s in zip(np.cos(ang), np.sin(ang))])


@dataclass(frozen=True)
class CharSumInput:
    """Arguments of the composite character sum; residues are reduced on use."""

    q: int
    n1: int
    n2: int
    h: int
    m: int
    sign: int = 1

    def __post_init__(self):
        if self.q < 1 or self.n1 < 1:
            raise RangeError("q and n1 must be positive")
        if self.q % self.n1:
            raise ArgumentError(f"n1 = {self.n1} does not divide q = {self.q}")
        _check_sign(self.sign)


def char_sum_direct(inp: CharSumInput) -> complex:
    """sum*_{a mod q} e(-abar h/q) e(abar m/q) S(abar, +-n2; q/n1) by direct loops."""
    q, n1 = inp.q, inp.n1
    r = q // n1
    if q == 1:
        return 1.0 + 0.0j
    a = units(q)
    abar = inverse_table(q)[a]
    kl = _kloosterman_row(abar % r if r > 1 else np.zeros_like(abar), inp.sign * inp.n2, r)
    outer = TWO_PI * _frac(abar * (inp.m - inp.h), q)
    terms = (np.cos(outer) + 1j * np.sin(outer)) * kl
    return complex(fsum(terms.real), fsum(terms.imag))


def char_sum_reduced(inp: CharSumInput) -> complex:
    """sum_{d | q} d mu(q/d) sum*_{alpha mod q/n1, n1 alpha = h - m (d)} e(+-alphabar n2 / (q/n1))."""
    q, n1 = inp.q, inp.n1
    r = q // n1
    if q == 1:
        return 1.0 + 0.0j
    alpha = units(r)
    abar = inverse_table(r)[alpha] if r > 1 else np.zeros(1, dtype=np.int64)
    ang = TWO_PI * _frac(inp.sign * abar * inp.n2, r)
    cs, sn = np.cos(ang), np.sin(ang)
    re, im = [], []
    for d in divisors(q):
        mu = mobius(q // d)
        if mu == 0:
            continue
        sel = (n1 * alpha - (inp.h - inp.m)) % d == 0
        if sel.any():
            w = d * mu
            re.append(w * fsum(cs[sel]))
            im.append(w * fsum(sn[sel]))
    return complex(fsum(re), fsum(im))


@dataclass(frozen=True)
class CorrelationInput:
    """Moduli q = q1 q2 and q' = q1 q2p sharing n1 | q1, with shifts l_i = h_i - m_i."""

    q1: int
    q2: int
    q2p: int
    n1: int
    h1: int
    h2: int
    m1: int
    m2: int

    def __post_init__(self):
        if min(self.q1, self.q2, self.q2p, self.n1) < 1:
            raise RangeError("moduli must be positive")
        if self.q1 % self.n1:
            raise ArgumentError("n1 must divide q1")
        if gcd(self.q2, self.n1) != 1 or gcd(self.q2p, self.n1) != 1:
            raise ArgumentError("q2 and q2p must be coprime to n1")

    @property
    def q(self) -> int:
        return self.q1 * self.q2

    @property
    def qp(self) -> int:
        return self.q1 * self.q2p

    @property
    def l1(self) -> int:
        return self.h1 - self.m1

    @property
    def l2(self) -> int:
        return self.h2 - self.m2


@dataclass(frozen=True)
class CorrelationResult:
    counts: dict  # (d, d') -> number of admissible pairs
    total: int  # signed: sum of d d' mu(q/d) mu(q'/d') counts
    absolute: int  # same with |mu| weights


def _units_and_inverses(r: int) -> tuple[np.ndarray, np.ndarray]:
    if r == 1:
        zero = np.zeros(1, dtype=np.int64)
        return zero, zero
    a = units(r)
    return a, inverse_table(r)[a]


def correlation_count(inp: CorrelationInput, n2: int) -> CorrelationResult:
    """Brute-force count of pairs (alpha, alpha') behind the correlated character sum."""
    r, rp = inp.q // inp.n1, inp.qp // inp.n1
    P = inp.q1 * inp.q2 * inp.q2p // inp.n1
    a, abar = _units_and_inverses(r)
    ap, apbar = _units_and_inverses(rp)
    match = ((abar[:, None] * inp.q2p - apbar[None, :] * inp.q2 + n2) % P) == 0
    match = match.astype(np.int64)
    counts, total, absolute = {}, 0, 0
    for d in divisors(inp.q):
        rows = ((inp.n1 * a - inp.l1) % d == 0).astype(np.int64)
        mu = mobius(inp.q // d)
        for dp in divisors(inp.qp):
            cols = ((inp.n1 * ap - inp.l2) % dp == 0).astype(np.int64)
            c = int(rows @ match @ cols)
            counts[(d, dp)] = c
            mup = mobius(inp.qp // dp)
            total += d * dp * mu * mup * c
            absolute += d * dp * abs(mu * mup) * c
    return CorrelationResult(counts, total, absolute)


def zero_freq_bound(inp: CorrelationInput) -> int:
    """(q/n1) * sum over d, d' | q with gcd(d, d') | (m1 - m2) - (h1 - h2) of gcd(d, d')."""
    q = inp.q
    shift = (inp.m1 - inp.m2) - (inp.h1 - inp.h2)
    acc = 0
    for d in divisors(q):
        for dp in divisors(q):
            g = gcd(d, dp)
            if shift % g == 0:
                acc += g
    return q // inp.n1 * acc


@dataclass(frozen=True)
class BoundReport:
    """``ok`` is ``lhs <= rhs`` up to rounding; the extra fields are diagnostics only."""

    lhs: float
    rhs: float
    ok: bool
    lhs_absolute: float = 0.0  # total with |mu| weights
    rhs_with_divisor_factors: float = 0.0


def zero_freq_bound_check(inp: CorrelationInput) -> BoundReport:
    """Compare |signed total at n2 = 0| with the gcd/lcm majorant; q' = q is required."""
    if inp.q2 != inp.q2p:
        raise ArgumentError("the zero-frequency majorant is stated for q' = q")
    res = correlation_count(inp, 0)
    rhs = float(zero_freq_bound(inp))
    lhs = float(abs(res.total))
    return BoundReport(lhs, rhs, lhs <= rhs * (1 + 1e-9), float(res.absolute), rhs)


def nonzero_freq_majorant(inp: CorrelationInput, n2: int) -> int:
    """The divisor-weighted count on the right of the non-zero-frequency bound, without leading factors."""
    q1, q2, q2p, n1 = inp.q1, inp.q2, inp.q2p, inp.n1
    a, abar = _units_and_inverses(q2)
    ap, apbar = _units_and_inverses(q2p)
    match = ((abar[:, None] * q2p - apbar[None, :] * q2 + n2) % (q2 * q2p)) == 0
    w_ap = np.zeros(len(ap), dtype=np.int64)
    for d in divisors(q2p):
        w_ap += d * ((n1 * ap - inp.l2) % d == 0)
    pair = int(match.sum(axis=0) @ w_ap)
    beta = np.arange(q1 // n1, dtype=np.int64)
    w_beta = 0
    for d in divisors(q1):
        w_beta += d * int(((n1 * beta - inp.l2) % d == 0).sum())
    return pair * w_beta


def nonzero_freq_bound_check(inp: CorrelationInput, n2: int) -> BoundReport:
    """|aggregated total| against q1 gcd(q2, n1 q2' + l1 n2) times the weighted count.

    ``rhs_with_divisor_factors`` also carries the d(q1) d(q2) factors that the
    proof of the bound absorbs into its implied constant.
    """
    if n2 == 0:
        raise WrongBranchError("non-zero-frequency bound called with n2 = 0")
    res = correlation_count(inp, n2)
    lhs = float(abs(res.total))
    g = gcd(inp.q2, inp.n1 * inp.q2p + inp.l1 * n2)
    rhs = float(inp.q1 * g * nonzero_freq_majorant(inp, n2))
    wide = rhs * divisor_count(inp.q1) * divisor_count(inp.q2)
    return BoundReport(lhs, rhs, lhs <= rhs * (1 + 1e-9), float(res.absolute), wide)
