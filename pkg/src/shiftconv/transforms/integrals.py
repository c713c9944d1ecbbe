"""The oscillatory transforms I1, I2, I3 and the four-fold integral A.

With e(t) = exp(2 pi i t) and smooth bumps V1, V2, V3 on [1, 2],

    I1(h, u) = int V1(x) e( H x u/(q Q) + 2 sqrt(H h x)/q ) dx,
    I3(m, u) = int V3(y) e(-Y y u/(q Q) + 2 sqrt(Y m y)/q ) dy,
    I2(N, u) = int V2(z) e( X z u/(q Q) + 3 (X z N)^(1/3)/q ) dz,

(the second phase term carries a selectable sign) and

    A = int W(u) psi(q, u) I1 I2 I3 du,

W a plateau weight equal to 1 on [-X^eps, X^eps] and supported in
[-2 X^eps, 2 X^eps].  The transforms are evaluated for a whole vector of u
at once on shared GK15 cells; A uses composite Gauss-Legendre panels in u.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..bump import PlateauCutoff, SmoothBump
from ..errors import ArgumentError, BudgetError
from .quadrature import NODES, WG7, WK15, gauss_panels

STANDARD_BUMP = SmoothBump(1.0, 2.0)
U_CHUNK = 2048


@dataclass(frozen=True)
class TransformResult:
    value: np.ndarray  # one entry per u
    error: np.ndarray
    cells: int


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ArgumentError("sign must be +1 or -1")


def oscillatory_family(bump: SmoothBump, phase, max_rate: float, us, tol: float = 1e-10,
                       max_cells: int = 20_000) -> TransformResult:
    """int bump(x) e(phase(x, u)) dx for every u in ``us`` on shared equal GK15 cells.

    ``phase(x, u)`` broadcasts a column of u against a row of x.  The cell
    count starts at four cells per turn of the fastest phase and doubles
    until every |K15 - G7| estimate is below ``tol * int |bump|``.
    """
    us = np.atleast_1d(np.asarray(us, dtype=np.float64))
    a, b = bump.support
    scale = tol * max(bump.integral, 1e-300)
    n = max(8, int(np.ceil(4.0 * max_rate * (b - a))))
    value, err = np.zeros(us.shape, dtype=np.complex128), np.full(us.shape, np.inf)
    while True:
        if n > max_cells:
            raise BudgetError(f"transform needs more than {max_cells} cells", value, float(err.max()))
        edges = np.linspace(a, b, n + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (b - a) / n
        x = (mid[:, None] + half * NODES[None, :]).ravel()
        wk = half * np.tile(WK15, n) * bump(x)
        wg = half * np.tile(WG7, n) * bump(x)
        value = np.empty(us.shape, dtype=np.complex128)
        err = np.empty(us.shape)
        for i in range(0, us.size, U_CHUNK):
            ph = np.exp(2j * np.pi * phase(x[None, :], us[i:i + U_CHUNK, None]))
            k, g = ph @ wk, ph @ wg
            value[i:i + U_CHUNK] = k
            err[i:i + U_CHUNK] = np.abs(k - g)
        if err.max() <= scale:
            return TransformResult(value, err, n)
        n *= 2


def I1(h: float, u, q: int, H: float, Q: float, bump: SmoothBump = STANDARD_BUMP, sign: int = 1,
       tol: float = 1e-10) -> TransformResult:
    """int V1(x) e(H x u/(qQ) +- 2 sqrt(H h x)/q) dx."""
    _check_sign(sign)
    if h < 1 or q < 1:
        raise ArgumentError("h and q must be >= 1")
    us = np.atleast_1d(np.asarray(u, dtype=np.float64))
    c1, c2 = H / (q * Q), sign * 2.0 * np.sqrt(H * h) / q
    rate = c1 * np.max(np.abs(us)) + abs(c2) / (2.0 * np.sqrt(bump.a))

    def phase(x, uu):
        return c1 * x * uu + c2 * np.sqrt(x)

    return oscillatory_family(bump, phase, rate, us, tol)


def I3(m: float, u, q: int, Y: float, Q: float, bump: SmoothBump = STANDARD_BUMP, sign: int = 1,
       tol: float = 1e-10) -> TransformResult:
    """int V3(y) e(-Y y u/(qQ) +- 2 sqrt(Y m y)/q) dy."""
    _check_sign(sign)
    if m < 1 or q < 1:
        raise ArgumentError("m and q must be >= 1")
    us = np.atleast_1d(np.asarray(u, dtype=np.float64))
    c1, c2 = -Y / (q * Q), sign * 2.0 * np.sqrt(Y * m) / q
    rate = abs(c1) * np.max(np.abs(us)) + abs(c2) / (2.0 * np.sqrt(bump.a))

    def phase(x, uu):
        return c1 * x * uu + c2 * np.sqrt(x)

    return oscillatory_family(bump, phase, rate, us, tol)


def I2(n1sq_n2: float, u, q: int, X: float, Q: float, bump: SmoothBump = STANDARD_BUMP, sign: int = 1,
       tol: float = 1e-10) -> TransformResult:
    """int V2(z) e(X z u/(qQ) +- 3 (X z n1^2 n2)^(1/3)/q) dz."""
    _check_sign(sign)
    if n1sq_n2 < 1 or q < 1:
        raise ArgumentError("n1^2 n2 and q must be >= 1")
    us = np.atleast_1d(np.asarray(u, dtype=np.float64))
    c1, c2 = X / (q * Q), sign * 3.0 * np.cbrt(X * n1sq_n2) / q
    rate = c1 * np.max(np.abs(us)) + abs(c2) / (3.0 * np.cbrt(bump.a) ** 2)

    def phase(x, uu):
        return c1 * x * uu + c2 * np.cbrt(x)

    return oscillatory_family(bump, phase, rate, us, tol)


@dataclass(frozen=True)
class AResult:
    value: complex
    u_nodes: int
    inner_error: float  # summed |K15 - G7| of the inner transforms, weighted like the outer rule


def eval_A(n1sq_n2: float, m: float, h: float, q: int, scheme, H: float, X: float, Y: float,
           signs: tuple[int, int, int] = (1, 1, 1), eps: float = 0.1, weight=None,
           bumps: tuple[SmoothBump, SmoothBump, SmoothBump] | None = None,
           psi_values=None, max_u_nodes: int = 200_000, tol: float = 1e-10) -> AResult:
    """A(n1^2 n2, m, h, q) = int W(u) psi(q, u) I1(h,u) I2(n1^2 n2,u) I3(m,u) du.

    ``weight`` defaults to the plateau cutoff at scale X^eps; ``psi_values``
    may replace psi(q, .) by a callable (used by tests).  Raises
    :class:`BudgetError` when the u-grid would exceed ``max_u_nodes``.
    """
    from ..deltasym import psi_grid

    if min(n1sq_n2, m, h, q, H, X, Y) <= 0:
        raise ArgumentError("parameters must be positive")
    s1, s2, s3 = signs
    V1, V2, V3 = bumps if bumps is not None else (STANDARD_BUMP,) * 3
    Q = scheme.Q
    R = X ** eps
    if weight is None:
        cut = PlateauCutoff()

        def weight(u):
            return cut(u / R)
    # oscillation of the integrand in u: the three linear phases and psi's own frequency
    freq = (H * V1.b + Y * V3.b + X * V2.b + 4.0 * scheme.L) / (q * Q)
    u, w = gauss_panels(-2.0 * R, 2.0 * R, min(R, 3.0 / max(freq, 1e-12)), order=20)
    if u.size > max_u_nodes:
        raise BudgetError(f"{u.size} u-nodes exceed the budget {max_u_nodes}", 0j, float("inf"))
    wu = w * weight(u)
    keep = wu != 0.0
    u, wu = u[keep], wu[keep]
    if u.size == 0:
        return AResult(0j, 0, 0.0)
    ps = psi_values(u) if psi_values is not None else psi_grid(q, u, scheme, xmax=2.0 * R)
    r1 = I1(h, u, q, H, Q, V1, s1, tol)
    r2 = I2(n1sq_n2, u, q, X, Q, V2, s2, tol)
    r3 = I3(m, u, q, Y, Q, V3, s3, tol)
    val = np.sum(wu * ps * r1.value * r2.value * r3.value)
    inner = np.abs(wu * ps)
    bound = V1.integral * V2.integral * V3.integral
    err = float(np.sum(inner * (r1.error + r2.error + r3.error)) * bound / min(V1.integral, V2.integral, V3.integral))
    return AResult(complex(val), int(u.size), err)


__all__ = [
    "AResult",
    "I1",
    "I2",
    "I3",
    "TransformResult",
    "eval_A",
    "oscillatory_family",
]
