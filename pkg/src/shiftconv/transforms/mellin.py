"""Mellin transforms of bumps and the Mellin-Barnes kernel G+- of the d3 Voronoi formula.

For a test function phi on (0, inf) and s = sigma + i t,

    G_l(y)  = (1/2 pi) int_{-T}^{T} y^-s gamma_l(s) phi~(-s) dt,
    gamma_l(s) = (pi^(-3s - 3/2) / 2) (Gamma((1 + s + l)/2) / Gamma((l - s)/2))^3.

G0 and G1 are real for real phi.  The kernel entering the Voronoi dual sum
is G+-(y) = G0(y) -+ i G1(y).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..bump import SmoothBump
from ..errors import AccuracyError, ArgumentError, ContourError, TruncationError
from .quadrature import gauss_panels
from .special import gamma_ratio

SIGMA_RANGE = (-1.0, 2.0)
POLE_MARGIN = 1e-3
NODES_PER_UNIT_T = 40
Y_CHUNK = 256


@dataclass(frozen=True)
class MellinProfile:
    """phi~(s) = int phi(x) x^(s-1) dx by Gauss-Legendre on the support of phi."""

    phi: SmoothBump
    nodes: int = 1200

    def __post_init__(self):
        if self.phi.a <= 0:
            raise ArgumentError("Mellin profile needs support in (0, inf)")

    @cached_property
    def _grid(self):
        x, w = self.phi.nodes(self.nodes)
        return x, w * self.phi(x), np.log(x)

    def derivative_at_one(self, j: int) -> float:
        """phi~^(j)(1) = int phi(x) (log x)^j dx."""
        _, wphi, lx = self._grid
        return float(wphi @ lx ** j)

    @cached_property
    def at_one(self) -> tuple[float, float, float]:
        return tuple(self.derivative_at_one(j) for j in range(3))

    def __call__(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=np.complex128)
        _, wphi, lx = self._grid
        flat = s.reshape(-1)
        out = np.empty(flat.shape, dtype=np.complex128)
        for i in range(0, flat.size, 512):
            blk = flat[i:i + 512]
            out[i:i + 512] = np.exp(np.outer(blk - 1.0, lx)) @ wphi
        return out.reshape(s.shape)


def mellin_profile(bump: SmoothBump, nodes: int = 1200) -> MellinProfile:
    return MellinProfile(bump, nodes)


def gamma_factor(s, ell: int) -> np.ndarray:
    """gamma_l(s) with the denominator as a reciprocal gamma (entire)."""
    if ell not in (0, 1):
        raise ArgumentError("ell must be 0 or 1")
    s = np.asarray(s, dtype=np.complex128)
    ratio = gamma_ratio((1.0 + s + ell) / 2.0, (ell - s) / 2.0)
    return 0.5 * np.exp((-3.0 * s - 1.5) * np.log(np.pi)) * ratio ** 3


def _check_contour(sigma: float) -> None:
    lo, hi = SIGMA_RANGE
    # poles of gamma_l at s = -1 - l - 2k all sit at or left of -1
    if abs(sigma + 1.0) < POLE_MARGIN:
        raise ContourError(f"sigma = {sigma} is within {POLE_MARGIN} of the pole at s = -1")
    if not lo < sigma < hi:
        raise ArgumentError(f"sigma must lie in ({lo}, {hi})")


@dataclass(frozen=True)
class GComponents:
    """Real kernels G0, G1 on a y grid with the diagnostics of the contour integral."""

    y: np.ndarray
    g0: np.ndarray
    g1: np.ndarray
    imag_ratio: float  # max |Im G_l| / |G_l| before taking real parts
    tail: np.ndarray  # integrated |integrand| over the outer tenth of [-T, T]
    sigma: float
    T: float

    def pm(self, sign: int) -> np.ndarray:
        return self.g0 - sign * 1j * self.g1


def g_components(y, profile: MellinProfile, sigma: float = 0.0, T: float = 100.0,
                 tail_tol: float | None = None) -> GComponents:
    """G0(y), G1(y) for an array of y > 0."""
    _check_contour(sigma)
    if T <= 0:
        raise ArgumentError("T must be positive")
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    if np.any(y <= 0):
        raise ArgumentError("y must be positive")
    t, wt = gauss_panels(-T, T, 20.0 / NODES_PER_UNIT_T, order=20)
    s = sigma + 1j * t
    core = profile(-s) * wt / (2.0 * np.pi)
    k0 = gamma_factor(s, 0) * core
    k1 = gamma_factor(s, 1) * core
    outer = np.abs(t) >= 0.9 * T
    a0, a1 = np.abs(k0[outer]), np.abs(k1[outer])
    ly = np.log(y)
    raw0 = np.empty(y.shape, dtype=np.complex128)
    raw1 = np.empty(y.shape, dtype=np.complex128)
    for i in range(0, y.size, Y_CHUNK):
        ys = np.exp(-np.outer(ly[i:i + Y_CHUNK], s))
        raw0[i:i + Y_CHUNK] = ys @ k0
        raw1[i:i + Y_CHUNK] = ys @ k1
    tail = y ** (-sigma) * (a0.sum() + a1.sum())
    scale = np.maximum(np.abs(raw0), np.abs(raw1))
    imag = float(np.max(np.maximum(np.abs(raw0.imag), np.abs(raw1.imag)) / np.maximum(scale, 1e-300)))
    if imag > 1e-6:
        raise AccuracyError(f"imaginary part ratio {imag:.2e} exceeds 1e-6", raw0 + 0j, imag)
    if tail_tol is not None:
        bad = tail > tail_tol * (1.0 + scale)
        if bad.any():
            raise TruncationError(
                f"tail estimate {float(tail.max()):.2e} above tolerance at T = {T}",
                tail=float(tail.max()), suggestion=2.0 * T)
    return GComponents(y, raw0.real.copy(), raw1.real.copy(), imag, tail, sigma, T)


def G_pm(y, profile: MellinProfile, sign: int, sigma: float = 0.0, T: float = 100.0,
         tail_tol: float | None = None) -> np.ndarray:
    """G+-(y) = G0(y) -+ i G1(y) (complex), for sign = +1 or -1."""
    if sign not in (1, -1):
        raise ArgumentError("sign must be +1 or -1")
    return g_components(y, profile, sigma, T, tail_tol).pm(sign)


__all__ = [
    "GComponents",
    "G_pm",
    "MellinProfile",
    "gamma_factor",
    "g_components",
    "mellin_profile",
]
