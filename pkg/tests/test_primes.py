import math

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nrl.primes import (
    PrimeRangeError, ThetaAccumulator, exact_log_primorial, first_primes, iter_segments,
    log_primorial, nth_prime, sieve_segment, simple_sieve, theta,
)


def test_simple_sieve_matches_sympy():
    assert simple_sieve(10**5).tolist() == list(sympy.primerange(2, 10**5 + 1))


@settings(max_examples=30)
@given(st.integers(0, 10**9), st.integers(1, 5000), st.integers(64, 4096))
def test_segment_matches_sympy(lo, width, seg):
    hi = lo + width
    got = sieve_segment(lo, hi, segment_size=seg).primes.tolist()
    assert got == list(sympy.primerange(lo, hi))


def test_segment_edges_and_count():
    t = sieve_segment(0, 30, count_before_lo=0)
    assert t.tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert sieve_segment(2, 3).tolist() == [2]
    assert sieve_segment(10**6, 10**6 + 1).tolist() == []


def test_iter_segments_parallel_equals_serial():
    a = [t.tolist() for t in iter_segments(10**6, 10**6 + 50000, segment_size=8192)]
    b = [t.tolist() for t in iter_segments(10**6, 10**6 + 50000, segment_size=8192,
                                           workers=2)]
    assert a == b
    assert sum(a, []) == list(sympy.primerange(10**6, 10**6 + 50000))


@pytest.mark.parametrize("n", [1, 2, 10, 1000, 78498, 123457])
def test_nth_prime_matches_sympy(n):
    assert nth_prime(n) == sympy.prime(n)


def test_ceiling_is_enforced():
    with pytest.raises(PrimeRangeError):
        sieve_segment(0, 200, ceiling=100)
    with pytest.raises(PrimeRangeError):
        nth_prime(100, ceiling=100)


@pytest.mark.parametrize("x", [2, 3, 100, 10**4, 10**6])
def test_theta_contains_high_precision_value(x):
    with mpmath.workdps(40):
        ref = mpmath.fsum(mpmath.log(p) for p in sympy.primerange(2, x + 1))
    t = theta(x)
    assert t.lo <= ref <= t.hi
    assert t.radius < 1e-9 * float(ref) + 1e-15


@pytest.mark.parametrize("k", [1, 2, 5, 50])
def test_log_primorial_against_bigint(k):
    lp = log_primorial(k)
    assert abs(lp.log_value.value - exact_log_primorial(k)) <= lp.log_value.radius + 1e-15


def test_theta_accumulator_merge_and_state():
    ps = first_primes(2000).tolist()
    a, b, whole = ThetaAccumulator(), ThetaAccumulator(), ThetaAccumulator()
    a.extend(ps[:700])
    b.extend(ps[700:])
    whole.extend(ps)
    a.merge(b)
    assert a.terms == whole.terms == 2000
    assert a.theta.overlaps(whole.theta)
    with pytest.raises(ValueError):
        b.merge(a)
    again = ThetaAccumulator.from_state(whole.state())
    assert again.theta == whole.theta


@given(st.integers(1, 5000))
def test_first_primes_prefix(n):
    ps = first_primes(n)
    assert len(ps) == n and ps[-1] == sympy.prime(n)
    assert np.all(np.diff(ps) > 0)
