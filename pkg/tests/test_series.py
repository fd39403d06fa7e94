from fractions import Fraction

import mpmath
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from nrl import series as S
from nrl.series import (
    ONE, P0, P1, W, ZERO, AsymSeries, MTermSeries, UnsupportedOrderError, WPolynomial,
    forward_difference, pm_expansion, shift_difference, solve_kf_ode,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
wpolys = st.lists(fractions, max_size=7).map(WPolynomial)
w_sym = sp.Symbol("w")


def to_sympy(p: WPolynomial):
    return sum(sp.Rational(c.numerator, c.denominator) * w_sym**i
               for i, c in enumerate(p.coeffs))


def from_sympy(expr) -> WPolynomial:
    poly = sp.Poly(sp.expand(expr), w_sym)
    cs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return WPolynomial(cs)


# -- polynomial ring ----------------------------------------------------------------

@given(wpolys, wpolys)
def test_wpolynomial_ring_ops_match_sympy(a, b):
    assert to_sympy(a + b) - sp.expand(to_sympy(a) + to_sympy(b)) == 0
    assert sp.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sp.expand(to_sympy(a.derivative()) - sp.diff(to_sympy(a), w_sym)) == 0
    assert (a - a).is_zero()


@given(wpolys, st.integers(1, 5))
def test_solve_kf_ode_exact(p, k):
    F = solve_kf_ode(k, p)
    assert F * k - F.derivative() - p == ZERO
    assert F.degree == p.degree


def test_solve_kf_ode_examples():
    assert solve_kf_ode(1, W) == WPolynomial([1, 1])
    assert solve_kf_ode(2, W * W) == WPolynomial([Fraction(1, 4), Fraction(1, 2), Fraction(1, 2)])
    assert solve_kf_ode(3, ZERO) == ZERO
    with pytest.raises(ValueError):
        solve_kf_ode(0, W)


def test_polynomial_str_and_eval():
    p = WPolynomial([3, -1, Fraction(1, 2)])
    assert str(p) == "1/2*w^2 - w + 3"
    assert p(Fraction(2)) == 3
    assert p(mpmath.mpf(2)) == 3


# -- shift calculus ----------------------------------------------------------------

def test_log_and_loglog_shift():
    assert S.log_shift().terms == {(1, 0): ONE}
    assert S.loglog_shift().terms == {(1, 1): ONE}


@given(wpolys, st.integers(1, 6))
def test_shift_difference_formula(C, k):
    got = shift_difference(C, k)
    want = C * k - C.derivative()
    assert got.coeff(1, k + 1) == want
    assert all(key == (1, k + 1) for key in got.terms)


def test_truncation_drops_high_orders():
    s = MTermSeries({(1, 1): ONE, (1, 4): ONE, (2, 0): ONE})
    assert s.terms == {(1, 1): ONE}
    a = AsymSeries({1: ONE, 3: W}, order=3)
    assert a.terms == {1: ONE}
    with pytest.raises(UnsupportedOrderError):
        a.coeff(3)


def test_asym_series_product_order_tracks_valuation():
    a = AsymSeries({1: ONE, 2: W}, order=3)
    b = AsymSeries({1: ONE}, order=4)
    prod = a.mul(b)
    assert prod.order == min(3 + 1, 4 + 1)
    assert prod.terms == {2: ONE, 3: W}


def test_reciprocal_inverts():
    s = AsymSeries({0: ONE, 1: P0, 2: P1}, order=5)
    r = s.reciprocal()
    one = s.mul(r)
    assert one.terms == {0: ONE}
    assert one.order == 5


def test_pm_expansion_orders():
    assert pm_expansion(0).terms == {-1: ONE, 0: P0}
    assert pm_expansion(1).terms == {-1: ONE, 0: P0, 1: P1}
    with pytest.raises(UnsupportedOrderError):
        pm_expansion(2)


def test_reciprocal_pm_bracket():
    r = S.reciprocal_pm().layer(1)
    assert r.terms[1] == ONE
    assert r.terms[2] == -P0 == 1 - W
    assert r.terms[3] == P0 * P0 - P1
    assert S.reciprocal_pm_shift().layer(1).terms == {}


# -- sympy oracle on the smooth model p(m) = m f(L), L = log m ------------------------

L_, u_ = sp.symbols("L u", positive=True)
f_ = L_ + sp.log(L_) - 1 + (sp.log(L_) - 2) / L_


def series_in_u(expr, order):
    """m d/dm expr, expanded in u = 1/L with log L kept as w."""
    e = sp.diff(expr, L_).subs(L_, 1 / u_)
    s = sp.series(e, u_, 0, order).removeO().subs(sp.log(u_), -w_sym)
    s = sp.expand(s)
    return {j: from_sympy(s.coeff(u_, j)) for j in range(order)}


def _layer(ms: MTermSeries):
    return {j: ms.coeff(1, j) for j in range(4)}


def test_log_pm_shift_consistent_matches_sympy():
    want = series_in_u(L_ + sp.log(f_), 4)
    assert _layer(S.log_pm_shift("consistent")) == want


def test_loglog_pm_shift_consistent_matches_sympy():
    want = series_in_u(sp.log(L_ + sp.log(f_)), 4)
    assert _layer(S.loglog_pm_shift("consistent")) == want


def test_reciprocal_pm_matches_sympy():
    e = (1 / f_).subs(L_, 1 / u_)
    s = sp.expand(sp.series(e, u_, 0, 4).removeO().subs(sp.log(u_), -w_sym))
    want = {j: from_sympy(s.coeff(u_, j)) for j in range(4)}
    assert _layer(S.reciprocal_pm()) == want


def test_inv_log_pm_matches_sympy():
    e = (1 / (L_ + sp.log(f_))).subs(L_, 1 / u_)
    s = sp.expand(sp.series(e, u_, 0, 4).removeO().subs(sp.log(u_), -w_sym))
    got = S.inv_log_pm("consistent")
    for j in range(4):
        assert got.coeff(j) == from_sympy(s.coeff(u_, j))


def test_displayed_variants_differ_where_expected():
    cons = S.log_pm_shift("consistent").layer(1)
    disp = S.log_pm_shift("displayed").layer(1)
    assert cons.terms[0] == disp.terms[0] and cons.terms[1] == disp.terms[1]
    assert disp.terms[2] == -cons.terms[2]  # only the sign of the u^2 term
    u3 = {v: S.loglog_pm_shift(v).coeff(1, 3)
          for v in ("statement", "proof", "product", "consistent")}
    assert u3["statement"] == 2 - 2 * W
    assert u3["proof"] == u3["product"] == WPolynomial([-2])
    assert u3["consistent"] == W * W - 3 * W + 3


def test_forward_difference_numeric():
    g = AsymSeries({1: W}, order=10**9)  # w/log m
    d = forward_difference(g)
    with mpmath.workdps(50):
        m = mpmath.mpf(10**8)
        exact = (mpmath.log(mpmath.log(m + 1)) / mpmath.log(m + 1)
                 - mpmath.log(mpmath.log(m)) / mpmath.log(m))
        assert abs(exact - d.evaluate(m)) < 1 / m**2
