"""Adaptive Gauss-Kronrod quadrature with half-period cells for oscillatory integrands."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..errors import AccuracyError, BudgetError

# Kronrod 15-point abscissae and weights (non-negative half), with the embedded Gauss 7-point weights.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])  # 15 nodes, increasing
WK15 = np.concatenate([_WK[:-1], _WK[::-1]])
WG7 = np.zeros(15)
WG7[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    cells: int


def gk15_cells(f: Callable[[np.ndarray], np.ndarray], left: np.ndarray, right: np.ndarray):
    """Kronrod estimates and |K15 - G7| error per cell, vectorised over cells."""
    mid = 0.5 * (left + right)
    half = 0.5 * (right - left)
    x = mid[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(f(x.ravel())).reshape(x.shape)
    k = half * (fx @ WK15)
    g = half * (fx @ WG7)
    return k, np.abs(k - g)


def _cells_with_l1(f, left: np.ndarray, right: np.ndarray):
    """gk15_cells plus the Kronrod estimate of int |f| over all cells."""
    mid = 0.5 * (left + right)
    half = 0.5 * (right - left)
    x = mid[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(f(x.ravel())).reshape(x.shape)
    k = half * (fx @ WK15)
    return k, np.abs(k - half * (fx @ WG7)), float(np.sum(half * (np.abs(fx) @ WK15)))


def adaptive_gk15(f, a: float, b: float, breaks=None, rtol: float = 1e-9, atol: float = 1e-15,
                  max_cells: int = 200_000, relative_to: str = "value") -> QuadResult:
    """Globally adaptive GK15 over [a, b] starting from the given cell breaks.

    A cell is accepted when its error is below its width share of
    ``max(atol, rtol * scale)``; the rest are bisected.  ``scale`` is |I| for
    ``relative_to="value"`` and the running estimate of int |f| for
    ``relative_to="l1"`` (the right scale for integrals that nearly cancel).  Raises
    :class:`BudgetError` (an :class:`AccuracyError`) with the partial value
    when more than ``max_cells`` cells would be needed.
    """
    if breaks is None:
        breaks = np.array([a, b], dtype=np.float64)
    breaks = np.asarray(breaks, dtype=np.float64)
    left, right = breaks[:-1], breaks[1:]
    total_len = b - a
    done_val = 0.0 + 0.0j
    done_err = 0.0
    ncells = len(left)
    if relative_to not in ("value", "l1"):
        raise ValueError("relative_to must be 'value' or 'l1'")
    l1 = None
    while True:
        k, e = gk15_cells(f, left, right)
        estimate = done_val + k.sum()
        if relative_to == "l1":
            if l1 is None:
                _, _, l1 = _cells_with_l1(f, left, right)
            target = max(atol, rtol * l1)
        else:
            target = max(atol, rtol * abs(estimate))
        share = target * (right - left) / total_len
        ok = e <= share
        done_val += k[ok].sum()
        done_err += e[ok].sum()
        if ok.all():
            return QuadResult(complex(done_val), float(done_err), ncells)
        left, right = left[~ok], right[~ok]
        ncells += len(left)
        if ncells > max_cells:
            partial = complex(done_val + k[~ok].sum())
            residual = float(done_err + e[~ok].sum())
            raise BudgetError(f"cell budget {max_cells} exhausted", partial, residual)
        mid = 0.5 * (left + right)
        left, right = np.concatenate([left, mid]), np.concatenate([mid, right])


def half_period_breaks(dphase: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                       min_cells: int = 1, max_cells: int = 200_000) -> np.ndarray:
    """Cell boundaries in [a, b] where the phase (in turns) advances by about half a turn.

    ``dphase`` is the derivative of the phase.  The rate is maximised over a
    probe grid so the steps stay short where the phase accelerates.
    """
    probe = np.linspace(a, b, 2049)
    rate = np.abs(np.asarray(dphase(probe), dtype=np.float64)) if dphase is not None else np.zeros_like(probe)
    # cumulative half-turn count along the probe (upper bound per probe interval)
    seg = np.maximum(rate[:-1], rate[1:]) * np.diff(probe)
    turns = np.concatenate([[0.0], np.cumsum(seg)])
    n = max(min_cells, int(np.ceil(2.0 * turns[-1])))
    if n > max_cells:
        raise BudgetError(f"{n} half-period cells exceed the budget {max_cells}", 0.0, float("inf"))
    if turns[-1] == 0.0:
        return np.linspace(a, b, n + 1)
    levels = np.linspace(0.0, turns[-1], n + 1)
    breaks = np.interp(levels, turns, probe)
    breaks[0], breaks[-1] = a, b
    return breaks


def oscillatory_integral(amplitude, phase, interval, tol: float = 1e-9, dphase=None,
                         atol: float = 1e-15, max_cells: int = 200_000) -> QuadResult:
    """Integral of amplitude(x) * e(phase(x)) over ``interval``, e(t) = exp(2 pi i t).

    The interval is cut at half-periods of the phase (``dphase`` is its
    derivative; a central difference is used when it is not supplied), then
    refined adaptively with GK15 per cell.  ``tol`` is relative to
    int |amplitude|, so cancelling integrals are resolved to a fixed fraction
    of their trivial bound.
    """
    a, b = float(interval[0]), float(interval[1])
    if b == a:
        return QuadResult(0j, 0.0, 0)
    if b < a:
        r = oscillatory_integral(amplitude, phase, (b, a), tol, dphase, atol, max_cells)
        return QuadResult(-r.value, r.error, r.cells)
    if phase is None:
        def integrand(x):
            return np.asarray(amplitude(x), dtype=np.complex128)
        breaks = np.array([a, b])
    else:
        if dphase is None:
            step = 1e-6 * max(1.0, b - a)

            def dphase(x):
                return (phase(x + step) - phase(x - step)) / (2 * step)

        def integrand(x):
            return amplitude(x) * np.exp(2j * np.pi * phase(x))

        breaks = half_period_breaks(dphase, a, b, max_cells=max_cells)
    return adaptive_gk15(integrand, a, b, breaks, rtol=tol, atol=atol, max_cells=max_cells, relative_to="l1")


def gauss_panels(a: float, b: float, width: float, order: int = 20) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on [a, b] with panels no wider than ``width``."""
    n = max(1, int(np.ceil((b - a) / width)))
    edges = np.linspace(a, b, n + 1)
    g, w = leggauss(order)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * np.diff(edges)
    return (mid[:, None] + half[:, None] * g).ravel(), (half[:, None] * w).ravel()


__all__ = [
    "AccuracyError",
    "QuadResult",
    "adaptive_gk15",
    "gauss_panels",
    "gk15_cells",
    "half_period_breaks",
    "oscillatory_integral",
]
