from math import gcd

import numpy as np
import pytest

from shiftconv.arith import (MAX_SIEVE, build_factor_table, divisors, euler_phi, factorize, gcd_lcm,
                             mobius, mod_inverse, sieve_multiplicative)
from shiftconv.errors import ArgumentError, NotInvertibleError, RangeError, SizeError

N = 10_000


@pytest.fixture(scope="module")
def table():
    return build_factor_table(N)


def test_spf_small():
    t = build_factor_table(10)
    assert t.spf[1:].tolist() == [1, 2, 3, 2, 5, 2, 7, 2, 3, 2]


def test_spf_examples(table):
    assert table.spf[97] == 97
    assert table.spf[91] == 7


def test_spf_invariants(table):
    for n in range(2, N + 1):
        p = int(table.spf[n])
        brute = next(d for d in range(2, n + 1) if n % d == 0)
        assert p == brute


def test_size_errors():
    with pytest.raises(SizeError):
        build_factor_table(0)
    with pytest.raises(SizeError):
        build_factor_table(MAX_SIEVE + 1)


def test_factorize(table):
    assert factorize(1, table) == []
    assert factorize(12, table) == [(2, 2), (3, 1)]
    assert factorize(9973, table) == [(9973, 1)]
    for n in range(1, 2000):
        fac = factorize(n, table)
        assert int(np.prod([p ** e for p, e in fac])) == n
        assert [p for p, _ in fac] == sorted({p for p, _ in fac})
    with pytest.raises(RangeError):
        factorize(N + 1, table)


def test_d3_examples():
    d3 = sieve_multiplicative("d3", 100).values
    assert d3[1] == 1
    assert d3[12] == 18
    assert sieve_multiplicative("mobius", 12).values[12] == 0


def test_d3_brute_force(table):
    d3 = sieve_multiplicative("d3", N, table).values
    brute = np.zeros(N + 1, dtype=np.int64)
    for a in range(1, N + 1):
        for b in range(1, N // a + 1):
            brute[a * b::a * b] += 1  # counts c with abc = n for each (a, b)
    assert np.array_equal(d3[1:], brute[1:])


def test_d3_prime_powers():
    d3 = sieve_multiplicative("d3", 3 ** 8).values
    for k in range(9):
        assert d3[3 ** k] == (k + 1) * (k + 2) // 2


@pytest.mark.parametrize("kind", ["d3", "mobius", "phi", "d"])
def test_multiplicativity(kind, table, rng):
    v = sieve_multiplicative(kind, N, table).values
    assert v[1] == 1
    for _ in range(2000):
        m, n = (int(x) for x in rng.integers(1, 200, 2))
        if gcd(m, n) == 1 and m * n <= N:
            assert v[m * n] == v[m] * v[n]


def test_mobius_sum(table):
    mu = sieve_multiplicative("mobius", N, table).values
    acc = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        acc[d::d] += mu[d]
    assert acc[1] == 1 and not acc[2:].any()


def test_phi_product_formula(table):
    phi = sieve_multiplicative("phi", N, table).values
    for n in range(1, N + 1):
        val = n
        for p, _ in factorize(n, table):
            val = val // p * (p - 1)
        assert phi[n] == val
    assert euler_phi(36) == 12 and mobius(30) == -1


def test_unknown_kind():
    with pytest.raises(ArgumentError):
        sieve_multiplicative("sigma", 10)


def test_mod_inverse():
    assert mod_inverse(1, 11) == 1
    assert mod_inverse(3, 10) == 7
    assert mod_inverse(5, 7) == 3
    with pytest.raises(NotInvertibleError):
        mod_inverse(4, 10)
    for q in range(2, 60):
        for a in range(1, q):
            if gcd(a, q) == 1:
                assert a * mod_inverse(a, q) % q == 1


def test_gcd_lcm():
    assert gcd_lcm(6, 10) == (2, 30)
    assert gcd_lcm(1, 17) == (1, 17)
    assert gcd_lcm(13, 13) == (13, 13)
    with pytest.raises(RangeError):
        gcd_lcm(0, 3)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
