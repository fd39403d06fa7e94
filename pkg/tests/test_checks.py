import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nrl.arith import factorize, is_weak_hardy_ramanujan
from nrl.checks import (
    ORIENTATION, Precision, PrimorialScan, RobinScan, ScanRangeError, Status,
    clm_upper_check, hr_candidates, hr_scan, isotonic_decreasing, make_verdict,
    monotone_violation, nicolas_check, nicolas_scan, parse_stride, robin_block,
    robin_check, robin_scan, stride_points, summary_from_state, summary_state,
)
from nrl.errbound import ErrBound

EG = math.exp(0.5772156649015329)


def mp_nicolas(k):
    """Oracle: prod p/(p-1) and e^gamma log log N_k in 50-digit arithmetic."""
    ps = list(sympy.primerange(2, sympy.prime(k) + 1))
    with mpmath.workdps(50):
        lhs = mpmath.fprod(mpmath.mpf(p) / (p - 1) for p in ps)
        rhs = mpmath.exp(mpmath.euler) * mpmath.log(mpmath.log(mpmath.fprod(ps)))
        return lhs, rhs


def test_orientation_is_declared_once():
    assert ORIENTATION["nicolas"] == 1
    assert all(ORIENTATION[k] == -1 for k in ("robin", "clm", "clm_alt", "reverse_nicolas"))
    big, small = ErrBound(2.0), ErrBound(1.0)
    assert make_verdict("nicolas", 1, big, small).status is Status.HOLDS
    assert make_verdict("robin", 1, big, small).status is Status.FAILS
    assert make_verdict("robin", 1, small, big).status is Status.HOLDS
    assert make_verdict("nicolas", 1, ErrBound(1.0, 0.1), ErrBound(1.05)).status \
        is Status.INDETERMINATE


def test_nicolas_small_k():
    v1 = nicolas_check(1)
    assert v1.status is Status.HOLDS and v1.rhs_log.value == -math.inf
    assert v1.lhs_log.contains(math.log(2))
    v3 = nicolas_check(3)
    assert v3.status is Status.HOLDS
    assert v3.lhs_log.contains(math.log(30 / 8))
    lhs, rhs = mp_nicolas(3)
    assert float(rhs) == pytest.approx(2.18, abs=0.01)
    v4 = nicolas_check(4)
    assert v4.lhs_log.contains(math.log(210 / 48)) and v4.holds


@pytest.mark.parametrize("k", [2, 10, 100, 1000, 5000])
def test_nicolas_margin_against_mpmath(k):
    lhs, rhs = mp_nicolas(k)
    want = float(mpmath.log(lhs) - mpmath.log(rhs))
    v = nicolas_check(k)
    assert v.margin.lo <= want <= v.margin.hi
    assert v.margin.radius < 1e-9


def test_incremental_scan_equals_direct_checks():
    seen = []
    nicolas_scan(1, 1000, on_verdict=seen.append)
    assert [v.subject for v in seen] == list(range(1, 1001))
    for v in seen:
        d = nicolas_check(v.subject)
        assert v.status is d.status
        assert v.margin.overlaps(d.margin) or v.subject == 1


def test_single_point_scan():
    seen = []
    s = nicolas_scan(1, 1, on_verdict=seen.append)
    assert s.total == 1 and seen[0] == nicolas_check(1)


def test_geometric_stride():
    assert parse_stride("geometric:2") == ("geometric", 2.0)
    with pytest.raises(ValueError):
        parse_stride("geometric:0.5")
    pts = stride_points(1, 1000, 2.0)
    seen = []
    nicolas_scan(1, 1000, "geometric:2", on_verdict=seen.append)
    assert [v.subject for v in seen] == pts


def test_scan_range_errors():
    with pytest.raises(ScanRangeError):
        PrimorialScan("nicolas", 5, 4)
    with pytest.raises(ScanRangeError):
        RobinScan(2, 2)


@pytest.mark.parametrize("n,status", [(1, Status.UNDEFINED_RHS), (2, Status.UNDEFINED_RHS),
                                      (5040, Status.FAILS), (5041, Status.HOLDS),
                                      (10**6, Status.HOLDS)])
def test_robin_examples(n, status):
    assert robin_check(n).status is status


def test_robin_margin_against_mpmath():
    for n in (3, 5040, 5041, 720720, 10**12 + 39):
        f = factorize(n)
        with mpmath.workdps(50):
            want = (mpmath.euler + mpmath.log(mpmath.log(mpmath.log(n)))
                    - mpmath.log(mpmath.mpf(int(sympy.divisor_sigma(n))) / n))
        v = robin_check(f)
        assert v.margin.lo <= want <= v.margin.hi


@settings(max_examples=20)
@given(st.integers(3, 10**8))
def test_robin_block_agrees_with_scalar(lo):
    blk = robin_block(lo, lo + 300)
    for i in range(0, 300, 7):
        v, s = blk.verdict(i), robin_check(int(blk.n[i]))
        assert v.status is s.status
        assert v.margin.overlaps(s.margin)


def test_robin_block_small_range_against_divisor_oracle():
    blk = robin_block(1, 5041)
    for i, n in enumerate(range(1, 5041)):
        if n <= 2:
            assert blk.verdict(i).status is Status.UNDEFINED_RHS
            continue
        ratio = int(sympy.divisor_sigma(n)) / n
        fails = ratio >= EG * math.log(math.log(n))
        assert blk.verdict(i).status is (Status.FAILS if fails else Status.HOLDS)


def test_robin_scan_parallel_equals_serial():
    a, b = [], []
    robin_scan(2, 200_000, on_verdict=a.append)
    robin_scan(2, 200_000, workers=2, on_verdict=b.append)
    assert a == b


def test_robin_failures_and_hardy_ramanujan_form():
    s = robin_scan(2, 100_001)
    assert s.consistent
    # every failure has weakly decreasing exponents except 18 = 2 * 3^2
    odd = [v.subject for v in s.failures
           if not is_weak_hardy_ramanujan(factorize(v.subject))]
    assert odd == [18]
    assert s.extras["hr_weak"]["false"] == 1
    assert max(v.subject for v in s.failures) <= 5040


def test_precision_policies():
    fast = robin_block(10**6, 10**6 + 1000, Precision.FAST64)
    guarded = robin_block(10**6, 10**6 + 1000)
    assert np.all(fast.margin_r == 0.0)
    assert np.array_equal(fast.status, guarded.status)
    v = nicolas_check(500, Precision.HIGH)
    assert v.status is nicolas_check(500).status


def test_clm_checks():
    assert clm_upper_check(5).status is Status.HOLDS
    assert clm_upper_check(1).status is Status.FAILS  # k <= 4 is informational
    assert clm_upper_check(4).status in set(Status)
    with mpmath.workdps(40):
        ps = [2, 3, 5, 7, 11]
        lhs = mpmath.fprod(mpmath.mpf(p + 1) / p for p in ps)
        rhs = mpmath.exp(mpmath.euler) * mpmath.log(2 * mpmath.log(mpmath.fprod(ps)))
    assert (lhs < rhs) == clm_upper_check(5).holds


def test_hr_candidates_examples():
    got = [f.n for f in hr_candidates(1, math.log(8))]
    assert got == [2, 4, 8]
    ns = {f.n for f in hr_candidates(2, math.log(12))}
    assert 12 in ns and 18 not in ns


def test_hr_candidates_count_against_filter():
    limit = 10**6
    brute = 0
    for a in range(1, 20):
        for b in range(0, a + 1):
            for c in range(0, b + 1):
                if (b == 0 and c > 0):
                    continue
                if 2**a * 3**b * 5**c <= limit:
                    brute += 1
    assert sum(1 for _ in hr_candidates(3, math.log(limit))) == brute


def test_hr_scan_failures_are_small():
    s = hr_scan(6, math.log(10**15))
    assert s.consistent and s.fails > 0
    assert max(v.subject for v in s.failures) == 5040


def test_summary_state_roundtrip():
    s = robin_scan(2, 6000)
    t = summary_from_state(summary_state(s))
    assert (t.total, t.fails, t.holds, t.undefined) == (s.total, s.fails, s.holds, s.undefined)
    assert t.failures == s.failures


def test_isotonic_helpers():
    assert monotone_violation([5, 4, 3, 2]) == 0.0
    assert monotone_violation([5, 4, 4.5, 2]) > 0
    assert isotonic_decreasing([1, 3]).tolist() == [2, 2]
