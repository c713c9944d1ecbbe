"""Complex Gamma (Lanczos with reflection) and integer-order Bessel J."""

from __future__ import annotations

import numpy as np

from ..errors import ArgumentError, PoleError

# Lanczos coefficients for g = 7, n = 9.
_G = 7.0
_LANCZOS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_HALF_LOG_2PI = 0.5 * np.log(2.0 * np.pi)


def _is_pole(z: np.ndarray) -> np.ndarray:
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def _loggamma_right(z: np.ndarray) -> np.ndarray:
    """log Gamma(z) for Re z >= 1/2 (principal branch of the Lanczos form)."""
    zm = z - 1.0
    acc = np.full(z.shape, _LANCZOS[0], dtype=np.complex128)
    for k in range(1, len(_LANCZOS)):
        acc = acc + _LANCZOS[k] / (zm + k)
    t = zm + _G + 0.5
    return _HALF_LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(acc)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    """log sin(pi z) computed without overflow for large |Im z|."""
    # sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; factor the dominant exponential
    w = 1j * np.pi * z
    big = np.where(w.real >= 0, w, -w)
    sgn = np.where(w.real >= 0, 1.0, -1.0)
    # sin = sgn * e^{big} (1 - e^{-2 big}) / 2i
    return big + np.log1p(-np.exp(-2.0 * big)) - np.log(2j * sgn)


def loggamma_complex(z):
    """log Gamma(z) for complex z (any branch of the imaginary part; exp gives Gamma)."""
    z = np.asarray(z, dtype=np.complex128)
    if np.any(_is_pole(z)):
        raise PoleError("Gamma has a pole at a non-positive integer")
    left = z.real < 0.5
    out = np.empty(z.shape, dtype=np.complex128)
    out[~left] = _loggamma_right(z[~left])
    zl = z[left]
    # Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    out[left] = np.log(np.pi) - _log_sin_pi(zl) - _loggamma_right(1.0 - zl)
    return out if out.ndim else out[()]


def gamma_complex(z):
    """Gamma(z); raises PoleError at non-positive integers."""
    return np.exp(loggamma_complex(z))


def rgamma_complex(z):
    """1/Gamma(z), entire: exactly 0 at the poles of Gamma."""
    z = np.asarray(z, dtype=np.complex128)
    pole = _is_pole(z)
    out = np.zeros(z.shape, dtype=np.complex128)
    ok = ~pole
    out[ok] = np.exp(-loggamma_complex(z[ok])) if ok.any() else out[ok]
    return out if out.ndim else out[()]


def gamma_ratio(a, b):
    """Gamma(a) / Gamma(b) with 1/Gamma(b) taken as the entire reciprocal gamma.

    Written as Gamma(a) Gamma(1 - b) sin(pi b) / pi when Re b < 1/2 so no
    intermediate overflows for large imaginary parts.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    a, b = np.broadcast_arrays(a, b)
    out = np.zeros(a.shape, dtype=np.complex128)
    zero = _is_pole(b)
    ok = ~zero
    aa, bb = a[ok], b[ok]
    left = bb.real < 0.5
    val = np.empty(aa.shape, dtype=np.complex128)
    la = loggamma_complex(aa)
    val[~left] = np.exp(la[~left] - _loggamma_right(bb[~left]))
    bl = bb[left]
    val[left] = np.exp(la[left] + _loggamma_right(1.0 - bl) + _log_sin_pi(bl)) / np.pi
    out[ok] = val
    return out if out.ndim else out[()]


# ---------------------------------------------------------------- Bessel J

MAX_ORDER = 30
MAX_ARG = 1e6
_HANKEL_MIN_TERMS = 8
_HANKEL_MAX_TERMS = 40


def bessel_switch(order: int) -> float:
    """Argument above which the Hankel expansion is used for J_order."""
    return max(25.0, 2.0 * order * order)


def _bessel_miller(n: int, x: np.ndarray) -> np.ndarray:
    """J_n(x) by backward recurrence, normalised with J0 + 2 sum J_2k = 1."""
    xmax = float(x.max())
    start = int(max(n, xmax) + 20 + 2.5 * np.sqrt(max(n, xmax)) * 4)
    start += start % 2
    inv2x = 2.0 / x
    jp1 = np.zeros_like(x)
    j = np.full_like(x, 1e-300)
    norm = np.zeros_like(x)
    result = np.zeros_like(x)
    for k in range(start, 0, -1):
        jm1 = k * inv2x * j - jp1
        jp1, j = j, jm1  # j now holds J_{k-1}
        if (k - 1) == n:
            result = j.copy()
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j
        big = np.abs(j) > 1e250
        if big.any():
            j[big] *= 1e-250
            jp1[big] *= 1e-250
            norm[big] *= 1e-250
            result[big] *= 1e-250
    norm += j  # J_0
    return result / norm


def _bessel_hankel(n: int, x: np.ndarray) -> np.ndarray:
    mu = 4.0 * n * n
    z8 = 8.0 * x
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    for k in range(1, _HANKEL_MAX_TERMS + 1):
        term = term * (mu - (2 * k - 1) ** 2) / (k * z8)
        if k % 2:
            q += term if (k // 2) % 2 == 0 else -term
        else:
            p += -term if (k // 2) % 2 else term
        if k >= _HANKEL_MIN_TERMS and np.max(np.abs(term)) < 1e-17:
            break
    chi = x - (0.5 * n + 0.25) * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j(order: int, x):
    """J_order(x) for integer 0 <= order <= 30 and 0 <= x <= 1e6, vectorised over x."""
    if int(order) != order or not 0 <= order <= MAX_ORDER:
        raise ArgumentError(f"order must be an integer in [0, {MAX_ORDER}]")
    n = int(order)
    x = np.asarray(x, dtype=np.float64)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x < 0) or np.any(x > MAX_ARG):
        raise ArgumentError("x must lie in [0, 1e6]")
    out = np.zeros_like(x)
    out[x == 0] = 1.0 if n == 0 else 0.0
    switch = bessel_switch(n)
    lo = (x > 0) & (x < switch)
    hi = x >= switch
    if lo.any():
        out[lo] = _bessel_miller(n, x[lo])
    if hi.any():
        out[hi] = _bessel_hankel(n, x[hi])
    return out[0] if scalar else out


__all__ = [
    "bessel_j",
    "bessel_switch",
    "gamma_complex",
    "gamma_ratio",
    "loggamma_complex",
    "rgamma_complex",
]
