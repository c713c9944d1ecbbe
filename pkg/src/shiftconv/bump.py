"""Compactly supported smooth weights."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ArgumentError


@lru_cache(maxsize=16)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return leggauss(n)


def _raw(u: np.ndarray) -> np.ndarray:
    out = np.zeros_like(u, dtype=np.float64)
    inside = np.abs(u) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
    return out


@dataclass(frozen=True)
class SmoothBump:
    """``scale * exp(-1/(1-u^2))`` with ``u`` the affine image of ``[a, b]`` on ``[-1, 1]``.

    Zero outside ``(a, b)``, strictly positive inside, and flat to all
    orders at both endpoints.
    """

    a: float = 1.0
    b: float = 2.0
    scale: float = 1.0

    def __post_init__(self):
        if not self.b > self.a:
            raise ArgumentError(f"empty support [{self.a}, {self.b}]")

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        u = (2.0 * t - (self.a + self.b)) / (self.b - self.a)
        return self.scale * _raw(u)

    @property
    def support(self) -> tuple[float, float]:
        return self.a, self.b

    def nodes(self, n: int = 400) -> tuple[np.ndarray, np.ndarray]:
        """Gauss-Legendre nodes and weights on the support."""
        g, w = _legendre(n)
        half = 0.5 * (self.b - self.a)
        return self.a + half * (g + 1.0), half * w

    @cached_property
    def integral(self) -> float:
        x, w = self.nodes(400)
        return float(w @ self(x))

    def moment_log(self, j: int) -> float:
        """``int bump(x) (log x)^j dx``; requires a > 0."""
        x, w = self.nodes(400)
        return float(w @ (self(x) * np.log(x) ** j))

    def scaled(self, factor: float) -> "SmoothBump":
        return SmoothBump(self.a, self.b, self.scale * factor)


def normalized_sum_bump(a: float, b: float) -> SmoothBump:
    """Bump on ``[a, b]`` rescaled so that its values at the positive integers sum to 1."""
    base = SmoothBump(a, b)
    r = np.arange(max(1, int(np.floor(a))), int(np.ceil(b)) + 1, dtype=np.float64)
    total = float(np.sum(base(r)))
    if total <= 0.0:
        raise ArgumentError(f"no integer inside ({a}, {b})")
    return base.scaled(1.0 / total)


def smooth_step(s: np.ndarray) -> np.ndarray:
    """C-infinity step rising from 0 at s <= 0 to 1 at s >= 1."""
    s = np.asarray(s, dtype=np.float64)

    def g(t):
        out = np.zeros_like(t)
        pos = t > 0
        out[pos] = np.exp(-1.0 / t[pos])
        return out

    up, down = g(s), g(1.0 - s)
    return up / (up + down)


@dataclass(frozen=True)
class PlateauCutoff:
    """Even weight equal to 1 on ``[-1, 1]``, 0 outside ``(-2, 2)``, smooth in between."""

    def __call__(self, x):
        x = np.abs(np.asarray(x, dtype=np.float64))
        return 1.0 - smooth_step(x - 1.0)
