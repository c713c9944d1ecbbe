import numpy as np
import pytest

from shiftconv.bump import SmoothBump
from shiftconv.deltasym import build_scheme
from shiftconv.errors import ArgumentError, BudgetError
from shiftconv.transforms.integrals import I1, I2, I3, eval_A, oscillatory_family

V = SmoothBump(1.0, 2.0)
Q = 100.0


def test_trivial_bound(rng):
    for _ in range(20):
        q = int(rng.integers(1, 50))
        u = rng.uniform(-3, 3, 5)
        for sign in (1, -1):
            assert np.all(np.abs(I1(int(rng.integers(1, 100)), u, q, 100.0, Q, sign=sign).value) <= V.integral + 1e-12)
            assert np.all(np.abs(I2(int(rng.integers(1, 100)), u, q, 1e4, Q, sign=sign).value) <= V.integral + 1e-12)
            assert np.all(np.abs(I3(int(rng.integers(1, 100)), u, q, 100.0, Q, sign=sign).value) <= V.integral + 1e-12)


def test_conjugation_at_u_zero():
    for f, arg, scale in ((I1, 7, 100.0), (I2, 5, 1e4), (I3, 11, 100.0)):
        p = f(arg, 0.0, 3, scale, Q, sign=1).value[0]
        m = f(arg, 0.0, 3, scale, Q, sign=-1).value[0]
        assert abs(p - np.conj(m)) <= 1e-12


def test_against_direct_quadrature():
    x = np.linspace(1, 2, 200001)
    w = np.full(x.size, x[1] - x[0])
    w[0] = w[-1] = 0.5 * w[0]
    h, u, q, H = 20, 0.7, 4, 100.0
    direct = np.sum(w * V(x) * np.exp(2j * np.pi * (H * x * u / (q * Q) + 2 * np.sqrt(H * h * x) / q)))
    assert abs(I1(h, u, q, H, Q).value[0] - direct) < 1e-9


def test_i1_decay_monotone_and_far_threshold():
    q, H = 5, 100.0
    ratios = [10.0, 1e2, 1e3, 1e4]
    vals = [abs(I1(r * q * q / H, 0.0, q, H, Q).value[0]) / V.integral for r in ratios]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-6


def test_i2_decay_monotone_and_far_threshold():
    q, X = 5, 1e4
    ratios = [1e2, 1e3, 1e4, 1e5, 1e6]
    vals = [abs(I2(r * q ** 3 / X, 0.0, q, X, Q).value[0]) / V.integral for r in ratios]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-6


@pytest.mark.xfail(strict=True, reason="bump Fourier tail exp(-c sqrt f) is too slow for 1e-6 at 10x the cutoff")
def test_i1_threshold_at_ten_times_cutoff():
    q, H = 5, 100.0
    assert abs(I1(10 * q * q / H, 0.0, q, H, Q).value[0]) <= 1e-6 * V.integral


@pytest.mark.xfail(strict=True, reason="bump Fourier tail exp(-c sqrt f) is too slow for 1e-6 at 10x the cutoff")
def test_i2_threshold_at_ten_times_cutoff():
    q, X = 5, 1e4
    assert abs(I2(10 * q ** 3 / X, 0.0, q, X, Q).value[0]) <= 1e-6 * V.integral


def test_argument_errors():
    with pytest.raises(ArgumentError):
        I1(0, 0.0, 1, 1.0, Q)
    with pytest.raises(ArgumentError):
        I2(1, 0.0, 1, 1.0, Q, sign=2)
    with pytest.raises(BudgetError):
        oscillatory_family(V, lambda x, u: 1e6 * x * u, 1e6, [1.0], max_cells=100)


@pytest.fixture(scope="module")
def scheme():
    return build_scheme(2500)


def test_eval_A_zero_weight(scheme):
    r = eval_A(3, 2, 5, 20, scheme, 100.0, 1e4, 100.0, weight=lambda u: np.zeros_like(u))
    assert r.value == 0 and r.u_nodes == 0


def test_eval_A_deterministic_and_bounded(scheme):
    args = (3, 2, 5, 20, scheme, 100.0, 1e4, 100.0)
    a, b = eval_A(*args), eval_A(*args)
    assert a.value == b.value
    assert abs(a.value) * scheme.Q / 20 <= 10


def test_eval_A_against_trapezoid(scheme):
    from shiftconv.bump import PlateauCutoff

    n, m, h, q, H, X, Y = 3, 2, 5, 20, 100.0, 1e4, 100.0
    R = X ** 0.1
    r = eval_A(n, m, h, q, scheme, H, X, Y, psi_values=lambda u: np.ones_like(u))
    u = np.linspace(-2 * R, 2 * R, 40001)
    w = np.full(u.size, u[1] - u[0])
    w[0] = w[-1] = 0.5 * w[0]
    f = PlateauCutoff()(u / R) * I1(h, u, q, H, scheme.Q).value * I2(n, u, q, X, scheme.Q).value
    f = f * I3(m, u, q, Y, scheme.Q).value
    assert abs(r.value - np.sum(w * f)) <= 1e-8 * max(1.0, abs(r.value))
    with pytest.raises(ArgumentError):
        eval_A(0, 2, 5, 20, scheme, 100.0, 1e4, 100.0)
