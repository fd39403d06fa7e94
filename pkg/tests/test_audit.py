import math
from fractions import Fraction

import numpy as np
import pytest

from nrl import audit as A
from nrl.audit import Match, classify
from nrl.series import ONE, P0, P1, W, ZERO, WPolynomial


def test_claimed_track_reproduces_claims():
    rep = A.assemble_recurrence("as_claimed")
    assert [c.match for c in rep.coefficients] == [Match.AGREES] * 3
    assert rep.coefficient(2).recomputed == ZERO
    assert rep.coefficient(3).recomputed == WPolynomial([-5, 3, -1])
    assert rep.C == ZERO
    assert rep.D == WPolynomial([-2, 1, Fraction(-1, 2)])


def test_displayed_track_flags_only_the_reciprocal_sign():
    claimed = A.assemble_recurrence("as_claimed")
    disp = A.assemble_recurrence("displayed")
    assert "cannot balance" in disp.leading_consistency
    for a, b in zip(claimed.coefficients, disp.coefficients):
        assert b.match is Match.SIGN_FLIP
        assert b.notes == ["flipped: reciprocal"]
        assert b.contributions["reciprocal"] == -a.contributions["reciprocal"]
        rest = {k: v for k, v in b.contributions.items() if k != "reciprocal"}
        assert rest == {k: v for k, v in a.contributions.items() if k != "reciprocal"}


def test_consistent_track_balances_with_zero_c_and_d():
    rep = A.assemble_recurrence("consistent")
    assert rep.C == ZERO and rep.D == ZERO
    c3 = rep.coefficient(3)
    assert c3.recomputed == ZERO and c3.match is Match.DIFFERS
    assert c3.contributions["loglog.p0"] == -c3.claimed_contributions["loglog.p0"]
    assert "loglog.higher" in c3.contributions
    assert "equals" in rep.notes[0]


def test_classify_rules():
    assert classify({"a": W}, {"a": W}) is Match.AGREES
    assert classify({"a": W, "b": ONE}, {"a": W + ONE}) is Match.AGREES  # totals equal
    assert classify({"a": -W, "b": ONE}, {"a": W, "b": ONE}) is Match.SIGN_FLIP
    assert classify({"a": -W, "c": ONE}, {"a": W}) is Match.DIFFERS
    assert classify({"a": 2 * W}, {"a": W}) is Match.DIFFERS


def test_sign_analysis():
    assert A.sign_analysis(WPolynomial([-5, 3, -1])) == "negative for every real w (no real roots)"
    assert A.sign_analysis(ZERO) == "identically zero"
    assert A.sign_analysis(W - 2).startswith("positive for w > 2")


def test_fit_cd_recovers_planted_values():
    rng = np.random.default_rng(7)
    logp = np.log(np.geomspace(100, 1e6, 20))
    C, D = 0.0321, -0.41
    r = C / logp + D / logp**2 + rng.normal(0, 1e-9, logp.size)
    c, d = A.fit_cd_samples(logp, r, range(20))
    assert c.fitted == pytest.approx(C, rel=0.05)
    assert d.fitted == pytest.approx(D, rel=0.05)


def test_fit_cd_needs_six_points():
    with pytest.raises(A.InsufficientGridError):
        A.fit_cd([10, 100, 1000, 10**4, 10**5])


def test_theta_probe():
    one = A.theta_bound_probe(1, [1])
    assert len(one["rows"]) == 1 and one["rows"][0]["p_m"] == 2
    res = A.theta_bound_probe(2, A.geometric_grid(10, 10**5))
    assert 0 < res["empirical_eta"] < math.inf
    assert res["empirical_eta_one_sided"] < 0  # theta(x) < x throughout
    with pytest.raises(ValueError):
        A.theta_bound_probe(4, [10])


def test_tail_identity_bound():
    for m in (10, 1000, 10**5):
        assert A.mertens_decomposition_check(m)["within_bound"]


def test_solved_d_against_remainder():
    rep = A.assemble_recurrence("as_claimed")
    rows = A.claimed_remainder_prediction(rep.D, [10**4, 10**6])
    assert all(r["predicted"] < 0 < r["observed"] for r in rows)
    assert abs(rows[-1]["observed"]) < abs(rows[-1]["predicted"]) / 100


def test_confrontation_small():
    c = A.verdict_confrontation(1000)
    assert c["numeric"]["fails"] == 0 and c["numeric"]["indeterminate"] == 0
    assert "contradict" in c["data_support"]
    assert c["reverse_claim"]["holds_on_grid"] == 0
    assert c["order3_report"]["recomputed"] == "-w^2 + 3*w - 5"


def test_identity_checks_distinguish_variants():
    grid = A.DEFAULT_M_GRID
    for name, good, bad in (("log_prime_shift", "consistent", "displayed"),
                            ("loglog_prime_shift", "consistent", "statement"),
                            ("loglog_prime_shift", "consistent", "proof")):
        full = grid + A.EXTENDED_M_GRID
        assert A.check_identity(name, good, full).passes
        assert not A.check_identity(name, bad, full).passes
    assert A.check_identity("inv_log_prime", "displayed", grid).passes
    assert A.check_identity("reciprocal_prime", m_grid=grid).passes
