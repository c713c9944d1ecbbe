from math import gcd

import numpy as np
import pytest

from shiftconv.arith import sieve_multiplicative
from shiftconv.coeffs import (GL3CoeffProvider, compute_tau_series, gl3_average_growth, gl3_provider, lam,
                              rankin_selberg_profile, tau_naive)
from shiftconv.errors import (ArgumentError, CoefficientOverflowError, DegeneracyError, DomainError,
                              RangeError, SizeError)


def test_tau_values(tau20k):
    assert [int(t) for t in tau20k.tau[1:7]] == [1, -24, 252, -1472, 4830, -6048]
    assert tau20k.tau[6] == tau20k.tau[2] * tau20k.tau[3]


def test_tau_matches_naive_oracle():
    N = 600
    s = compute_tau_series(N)
    assert [int(t) for t in s.tau[1:]] == tau_naive(N)[1:N + 1]


def test_lambda_values(tau20k):
    assert lam(tau20k, 1) == 1.0
    assert lam(tau20k, 2) == pytest.approx(-24 / 2 ** 5.5, rel=1e-15)
    assert lam(tau20k, 2) == pytest.approx(-0.530330, abs=1e-6)
    with pytest.raises(RangeError):
        lam(tau20k, 0)
    with pytest.raises(RangeError):
        lam(tau20k, 20001)


def test_lambda_matches_exact(tau20k):
    n = np.arange(1, 20001)
    exact = np.array([float(t) for t in tau20k.tau[1:]]) / n ** 5.5
    assert np.max(np.abs(exact - tau20k.lam[1:])) < 1e-13


def test_hecke_relations(tau20k, rng):
    tau = tau20k.tau
    for _ in range(1000):
        m, n = (int(x) for x in rng.integers(2, 140, 2))
        if gcd(m, n) == 1 and m * n <= 20000:
            assert tau[m * n] == tau[m] * tau[n]
    for p in (2, 3, 5, 7, 11, 13):
        j = 1
        while p ** (j + 1) <= 20000:
            assert tau[p ** (j + 1)] == tau[p] * tau[p ** j] - p ** 11 * tau[p ** (j - 1)]
            j += 1


def test_ramanujan_bound_exact(tau20k):
    d = sieve_multiplicative("d", 20000).values
    for n in range(1, 20001):
        t = int(tau20k.tau[n])
        assert t * t <= int(d[n]) ** 2 * n ** 11


def test_size_and_overflow_errors():
    with pytest.raises(SizeError):
        compute_tau_series(0)
    with pytest.raises(SizeError):
        compute_tau_series(2000, cap=1000)
    with pytest.raises(CoefficientOverflowError):
        compute_tau_series(6000, digit_bits=64)
    with pytest.raises(ArgumentError):
        compute_tau_series(100, digit_bits=96)


def test_tau_arrays_read_only(tau20k):
    with pytest.raises(ValueError):
        tau20k.lam[1] = 0.0


def test_rankin_selberg_profile(tau20k):
    prof = rankin_selberg_profile(tau20k, [1, 10, 100, 20000])
    assert prof[0] == (1, 1.0)
    assert all(r > 0 for _, r in prof)
    with pytest.raises(ArgumentError):
        rankin_selberg_profile(tau20k, [])
    with pytest.raises(ArgumentError):
        rankin_selberg_profile(tau20k, [10, 5])
    with pytest.raises(RangeError):
        rankin_selberg_profile(tau20k, [1, 30000])


def test_gl3_d3(tau20k):
    p = gl3_provider("d3", 1000)
    assert p.values[1] == 1.0
    assert all(p.values[q] == 3.0 for q in (2, 3, 5, 7, 997))
    assert np.array_equal(p.values, sieve_multiplicative("d3", 1000).values.astype(float))


def test_gl3_sym2(tau20k, rng):
    p = gl3_provider("sym2", 20000, tau20k)
    assert p.values[1] == 1.0
    for q in (2, 3, 5, 19997):
        assert p.values[q] == pytest.approx(tau20k.lam[q] ** 2 - 1.0, rel=1e-14)
    for _ in range(2000):
        m, n = (int(x) for x in rng.integers(2, 140, 2))
        if gcd(m, n) == 1 and m * n <= 20000:
            assert p.values[m * n] == pytest.approx(p.values[m] * p.values[n], rel=1e-12, abs=1e-12)


def test_sym2_prime_square(tau20k):
    # h_2(a^2, 1, a^-2) = lambda(p^2)^2 - lambda(p^2) ... checked through lambda(p)^4 - 3 lambda(p)^2 + 1 + ...
    p = gl3_provider("sym2", 20000, tau20k)
    for q in (2, 3, 5, 7):
        lp = tau20k.lam[q]
        e = lp * lp - 1
        assert p.values[q * q] == pytest.approx(e * e - e, rel=1e-12, abs=1e-12)


def test_sym2_domain_guard(tau20k):
    bad = tau20k.lam.copy()
    bad[7] = 2.5
    from shiftconv.coeffs import HeckeSeries

    corrupt = HeckeSeries(tau20k.limit, tau20k.tau, bad)
    with pytest.raises(DomainError):
        gl3_provider("sym2", 100, corrupt)
    with pytest.raises(ArgumentError):
        gl3_provider("sym2", 30000, tau20k)
    with pytest.raises(ArgumentError):
        gl3_provider("maass", 10)


def test_growth_fit_controls():
    vals = np.zeros(1001)
    vals[1] = 1.0
    flat = GL3CoeffProvider("d3", 1000, vals)
    assert gl3_average_growth(flat, [10, 100, 1000]).slope == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DegeneracyError):
        gl3_average_growth(flat, [10, 100])


GRID = [2 ** k for k in range(14, 21)]


@pytest.fixture(scope="module")
def tau_2e20():
    return compute_tau_series(2 ** 20, cap=2 ** 21)


def _direct_slope(values):
    sq = np.cumsum(np.asarray(values, dtype=np.float64) ** 2)
    x = np.log(GRID)
    return np.polyfit(x, np.log(sq[GRID]), 1)[0]


def test_growth_fit_matches_direct_oracle(tau_2e20):
    for mode in ("d3", "sym2"):
        p = gl3_provider(mode, 2 ** 20, tau_2e20)
        assert gl3_average_growth(p, GRID).slope == pytest.approx(_direct_slope(p.values), abs=1e-9)


def test_growth_sym2_window(tau_2e20):
    slope = gl3_average_growth(gl3_provider("sym2", 2 ** 20, tau_2e20), GRID).slope
    assert 0.9 <= slope <= 1.1


def test_growth_d3_above_one():
    slope = gl3_average_growth(gl3_provider("d3", 2 ** 20), GRID).slope
    assert 1.0 < slope < 1.0 + 8.0 / np.log(2 ** 14)


@pytest.mark.xfail(strict=True, reason="the log^8 X factor lifts the d3 slope to about 1.45 on this grid (see decisions ledger)")
def test_growth_d3_window():
    slope = gl3_average_growth(gl3_provider("d3", 2 ** 20), GRID).slope
    assert 1.0 <= slope <= 1.15
