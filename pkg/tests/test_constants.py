from decimal import Decimal

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from nrl.constants import (
    EXP_GAMMA, GAMMA, MERTENS, InsufficientSamplesError, UnknownConstantError,
    estimate_mertens, fit_intercept, geometric_grid, get_constant, reciprocal_prime_sums,
)


def test_pinned_constants_against_mpmath():
    with mpmath.workdps(60):
        for name, ref in (("gamma", mpmath.euler), ("exp_gamma", mpmath.exp(mpmath.euler)),
                          ("mertens", mpmath.mertens)):
            c = get_constant(name)
            assert abs(mpmath.mpf(str(c.value)) - ref) <= mpmath.mpf(str(c.radius))
            assert c.radius <= Decimal("1e-30")


def test_float_views_contain_truth():
    with mpmath.workdps(40):
        assert GAMMA.lo <= mpmath.euler <= GAMMA.hi
        assert EXP_GAMMA.lo <= mpmath.exp(mpmath.euler) <= EXP_GAMMA.hi
        assert MERTENS.lo <= mpmath.mertens <= MERTENS.hi


def test_unknown_constant():
    with pytest.raises(UnknownConstantError):
        get_constant("pi")


def test_reciprocal_prime_sums_against_fractions():
    p, s = reciprocal_prime_sums([1, 10, 100])
    assert p.tolist() == [2, 29, 541]
    exact = float(sum(sympy.Rational(1, q) for q in sympy.primerange(2, 542)))
    assert s[-1] == pytest.approx(exact, rel=1e-14)


@given(st.integers(1, 10**6), st.integers(0, 10**6), st.integers(1, 12))
def test_geometric_grid(lo, span, per):
    g = geometric_grid(lo, lo + span, per)
    assert g[0] == lo and g[-1] == lo + span
    assert g == sorted(set(g))


def test_fit_intercept_constant_and_recovery():
    x = np.linspace(0.05, 0.2, 10)
    assert fit_intercept(x, np.full(10, 0.3)).radius == 0.0
    b = fit_intercept(x, 0.25 + 0.7 * x)
    assert b.value == pytest.approx(0.25, abs=1e-12)
    with pytest.raises(InsufficientSamplesError):
        fit_intercept(x[:3], x[:3])


def test_mertens_estimate_improves():
    errs = [abs(estimate_mertens(m).value - MERTENS.value) for m in (10**4, 10**5, 10**6)]
    assert errs[0] >= errs[1] >= errs[2]
    assert errs[2] < 0.005
