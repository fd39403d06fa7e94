import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from nrl.arith import (
    ArithmeticRangeError, Factorization, SigmaOverflowError, euler_phi, factorize,
    is_hardy_ramanujan, is_prime, is_weak_hardy_ramanujan, log_sigma_ratio, omega,
    sigma_block, sigma_ratio, sigma_ratio_range,
)


def divisor_sum(n: int) -> int:
    """Oracle: enumerate divisors up to sqrt(n)."""
    s = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            s += d + (n // d if d * d != n else 0)
    return s


@given(st.integers(1, 10**12))
def test_factorize_matches_sympy(n):
    f = factorize(n)
    assert dict(f.factors) == sympy.factorint(n)


@pytest.mark.parametrize("n", [2**61 - 1, (2**31 - 1) * (2**31 + 11), 600851475143,
                               2**62 + 2**31 + 1, 999999999999999989 * 3])
def test_factorize_large(n):
    if n > 2**63:
        with pytest.raises(ArithmeticRangeError):
            factorize(n)
        return
    f = factorize(n)
    assert dict(f.factors) == sympy.factorint(n)


@given(st.integers(0, 10**15))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_factorization_validation():
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(ValueError):
        Factorization(13, ((2, 2), (3, 1)))


@given(st.integers(1, 10**6))
def test_sigma_phi_omega_against_oracles(n):
    f = factorize(n)
    assert sigma_ratio(f).sigma == divisor_sum(n) if n <= 10**5 else sympy.divisor_sigma(n)
    assert euler_phi(f) == sympy.totient(n)
    assert omega(f) == len(sympy.primefactors(n))


@given(st.integers(2, 10**9))
def test_sigma_ratio_exact_and_log(n):
    f = factorize(n)
    r = sigma_ratio(f)
    assert r.exact == Fraction(int(sympy.divisor_sigma(n)), n)
    b = log_sigma_ratio(f)
    with mpmath.workdps(40):
        assert b.lo <= mpmath.log(mpmath.mpf(r.sigma) / n) <= b.hi


def test_sigma_overflow_is_explicit():
    f = Factorization.from_pairs([(p, 1) for p in sympy.primerange(2, 60)])
    with pytest.raises(SigmaOverflowError):
        sigma_ratio(f)
    assert log_sigma_ratio(f).value > 0


@pytest.mark.parametrize("lo,hi", [(1, 5000), (99_990, 100_100), (10**8, 10**8 + 3000)])
def test_sigma_block_against_divisor_oracle(lo, hi):
    sig = sigma_block(lo, hi)
    assert sig.tolist() == [int(sympy.divisor_sigma(n)) for n in range(lo, hi)]


def test_sigma_ratio_range_streams_in_order():
    got = [(r.n, r.sigma) for r in sigma_ratio_range(1, 200, block=37)]
    assert got == [(n, divisor_sum(n)) for n in range(1, 200)]
    with pytest.raises(ArithmeticRangeError):
        next(sigma_ratio_range(1, 10, ceiling=5))


def test_hardy_ramanujan_predicates():
    assert is_hardy_ramanujan(factorize(2**3 * 3 * 5))
    assert not is_hardy_ramanujan(factorize(2 * 3**2))
    assert not is_hardy_ramanujan(factorize(3 * 5))  # skips 2
    assert is_weak_hardy_ramanujan(factorize(3**2 * 5))
    assert is_hardy_ramanujan(factorize(1))
