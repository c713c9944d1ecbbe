"""Numerical checks of the Poisson summation formula.

``schwartz``: sum_n F(n) = sum_m F^(m) for F(x) = exp(-pi a (x - b)^2).
``arithmetic_progression``: for W(x) = exp(-pi ((x - c)/w)^2),

    sum_n e(an/q) W(n/X) = (X/q) sum_m sum_{alpha mod q} e((a + m) alpha/q) W^(mX/q).

Both sides are summed independently (fsum per component), and each sum is
cut where the Gaussian tail falls below ``TAIL``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, cos, exp, fsum, log, pi, sin, sqrt

import numpy as np

from ..errors import ArgumentError, TruncationError

TAIL = 1e-12
KINDS = ("schwartz", "arithmetic_progression")


@dataclass(frozen=True)
class PoissonReport:
    kind: str
    lhs: complex
    rhs: complex
    abs_err: float
    terms: int
    dual_terms: int


def _csum(vals) -> complex:
    vals = list(vals)
    return complex(fsum(v.real for v in vals), fsum(v.imag for v in vals))


def _gauss_reach(rate: float, amp: float = 1.0, tail: float = TAIL) -> float:
    """Distance d with amp * sum_{k >= 0} exp(-rate (d + k)^2) < tail/10."""
    d = sqrt(max(0.0, log(10.0 * max(amp, 1.0) / tail)) / rate)
    return d + 1.0


def _e(t: float) -> complex:
    return complex(cos(2 * pi * t), sin(2 * pi * t))


def _schwartz(a: float = 1.0, b: float = 0.0) -> PoissonReport:
    if a <= 0:
        raise ArgumentError("Gaussian rate a must be positive")
    reach = _gauss_reach(pi * a)
    ns = range(int(np.floor(b - reach)), int(np.ceil(b + reach)) + 1)
    lhs = complex(fsum(exp(-pi * a * (n - b) ** 2) for n in ns))
    amp = 1.0 / sqrt(a)
    mreach = int(ceil(_gauss_reach(pi / a, amp)))
    ms = range(-mreach, mreach + 1)
    rhs = _csum(amp * exp(-pi * m * m / a) * _e(-b * m) for m in ms)
    return PoissonReport("schwartz", lhs, rhs, abs(lhs - rhs), len(ns), len(ms))


def _arith(a: int, q: int, X: float, center: float = 1.5, width: float = 0.1, eps: float = 0.05,
           dual_terms: int | None = None) -> PoissonReport:
    if q < 1 or X <= 0 or width <= 0:
        raise ArgumentError("need q >= 1, X > 0 and width > 0")
    # primal: n/X within reach of the centre
    reach = _gauss_reach(pi / (width * X) ** 2)
    ns = range(int(np.floor(center * X - reach)), int(np.ceil(center * X + reach)) + 1)
    lhs = _csum(exp(-pi * ((n / X - center) / width) ** 2) * _e((a * n % q) / q) for n in ns)
    # dual: W^(xi) = width exp(-pi (width xi)^2) e(-center xi) at xi = mX/q
    step_rate = pi * (width * X / q) ** 2
    amp = X / q * width * q
    essential = q * (q * X) ** eps / X  # dual length scale of the arithmetic-progression form
    needed = max(int(ceil(essential)), int(ceil(_gauss_reach(step_rate, amp))))
    M = needed if dual_terms is None else int(dual_terms)
    if dual_terms is not None:
        tail = 2.0 * amp * exp(-step_rate * (M + 1) ** 2) / (1.0 - exp(-step_rate))
        if tail > TAIL:
            raise TruncationError(f"dual truncation at {M} leaves tail {tail:.2e}", tail, needed)
    alphas = np.arange(q)
    rhs_terms = []
    for m in range(-M, M + 1):
        ang = 2 * pi * ((a + m) * alphas % q) / q
        char = complex(fsum(np.cos(ang)), fsum(np.sin(ang)))
        xi = m * X / q
        if char != 0:
            rhs_terms.append(X / q * char * width * exp(-pi * (width * xi) ** 2) * _e(-center * xi))
    rhs = _csum(rhs_terms)
    return PoissonReport("arithmetic_progression", lhs, rhs, abs(lhs - rhs), len(ns), 2 * M + 1)


def poisson_check(kind: str, **params) -> PoissonReport:
    """Run one Poisson check; ``params`` are (a, b) for schwartz and (a, q, X, center, width) otherwise."""
    if kind == "schwartz":
        return _schwartz(**params)
    if kind == "arithmetic_progression":
        return _arith(**params)
    raise ArgumentError(f"unknown kind {kind!r}; use one of {KINDS}")


__all__ = ["KINDS", "PoissonReport", "poisson_check"]
