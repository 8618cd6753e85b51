import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from dfsecrecy.analytic import (
    log_survival,
    ordering_predicates,
    slope_fixed_eve,
    slope_scaled_eve,
    sop_asymptotic,
    sop_closed_form,
    sop_limit,
)
from dfsecrecy.core import CaseId, ScenarioScaling, SnrTriple, ValidationError, snrs_from_scenario

CASES = ("1", "2", "3")


def _hop_secure(g, ge, rate):
    # Pr((1 + g X) / (1 + ge Y) > 2^R) with X, Y ~ Exp(1), integrating over Y.
    f = lambda y: math.exp(-y) * math.exp(-(2**rate * (1 + ge * y) - 1) / g)
    return quad(f, 0, math.inf, epsabs=0, epsrel=1e-13)[0]


def quadrature_sop(case, s, rate):
    plain = lambda g: math.exp(-(2**rate - 1) / g)
    sr = plain(s.gamma_r) if case == "1" else _hop_secure(s.gamma_r, s.gamma_e, rate)
    rd = plain(s.gamma_d) if case == "2" else _hop_secure(s.gamma_d, s.gamma_e, rate)
    return 1 - sr * rd


@pytest.mark.parametrize("case,snrs,rate,expected", [
    ("1", (10, 10, 1), 1, 0.31772437243501506),
    ("2", (10, 10, 1), 1, 0.31772437243501506),
    ("3", (10, 10, 1), 1, 0.43143697702917916),
    ("1", (10, 10, 0), 1, 0.1812692469220183),
    ("1", (50, 100, 1.2589), 1, 0.053388256918790455),
    ("2", (3, 7, 0.4), 0.5, 0.3092577709717579),
])
def test_closed_form_frozen_values(case, snrs, rate, expected):
    # expected values frozen from the quadrature oracle below
    assert sop_closed_form(case, SnrTriple(*snrs), rate) == pytest.approx(expected, rel=1e-11)


def test_closed_form_against_quadrature():
    rng = np.random.default_rng(11)
    for _ in range(40):
        s = SnrTriple(*(10 ** rng.uniform(-0.5, 3, 3)))
        rate = float(rng.uniform(0.2, 3))
        for case in CASES:
            assert sop_closed_form(case, s, rate) == pytest.approx(
                quadrature_sop(case, s, rate), rel=1e-8, abs=1e-13)


def test_conventional_case_has_no_closed_form():
    with pytest.raises(ValidationError):
        sop_closed_form(CaseId.CASE1_CONV, SnrTriple(1, 1, 1), 1)


def test_tiny_probabilities_keep_precision():
    s = SnrTriple(1e12, 1e12, 1e-3)
    p = sop_closed_form("1", s, 1)
    # first-order expansion is exact to ~1e-12 relative here
    assert p == pytest.approx((2 * 1 + 2 * 1e-3) / 1e12, rel=1e-9)


@pytest.mark.parametrize("case,expected", [("1", 4.0), ("2", 4.0), ("3", 6.0)])
def test_slope_fixed_eve_examples(case, expected):
    assert slope_fixed_eve(case, 1, 1, 1) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("case,expected", [("1", 0.5), ("2", 2 / 3), ("3", 5 / 6)])
def test_limit_examples(case, expected):
    assert sop_limit(case, 0.5, 1, 1) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("case,expected", [("1", 1.5), ("2", 1.0), ("3", 0.5)])
def test_slope_scaled_eve_examples(case, expected):
    assert slope_scaled_eve(case, 0.5, 1, 1) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("fn,args", [
    (slope_fixed_eve, (1, 1, 1)), (sop_limit, (0.5, 1, 1)), (slope_scaled_eve, (0.5, 1, 1)),
])
def test_unknown_case_rejected(fn, args):
    with pytest.raises(ValidationError):
        fn("1conv", *args)
    with pytest.raises(ValidationError):
        fn("7", *args)


def test_asymptotic_examples():
    a = sop_asymptotic("1", 1e4, ScenarioScaling(1), gamma_e_fixed=1, r=1)
    assert a.limit == 0 and a.slope == pytest.approx(4) and a.approx == pytest.approx(4e-4)
    b = sop_asymptotic("1", 1e4, ScenarioScaling(0.5, 1), r=1)
    assert b.approx == pytest.approx(0.5 + 1.5e-4, rel=1e-14)
    assert b.approx == b.limit + b.slope / b.gamma_d


@pytest.mark.parametrize("case", CASES)
def test_asymptotic_close_to_exact_at_high_snr(case):
    a = sop_asymptotic(case, 1e4, ScenarioScaling(1), gamma_e_fixed=1, r=1)
    exact = sop_closed_form(case, snrs_from_scenario(1e4, ScenarioScaling(1), 1), 1)
    assert abs(a.approx - exact) / exact < 1e-2


def test_asymptotic_scenario_errors():
    with pytest.raises(ValidationError):
        sop_asymptotic("1", 100, ScenarioScaling(1, 1), gamma_e_fixed=1)
    with pytest.raises(ValidationError):
        sop_asymptotic("1", 100, ScenarioScaling(1))


@pytest.mark.parametrize("case", CASES)
def test_slopes_are_limits_of_closed_form(case):
    # Independent route: gamma_d * P and gamma_d * (P - P_lim) evaluated far out.
    alpha, ge, beta, rate, gd = 0.7, 2.0, 1.5, 1.3, 1e9
    p = sop_closed_form(case, snrs_from_scenario(gd, ScenarioScaling(alpha), ge), rate)
    assert p * gd == pytest.approx(slope_fixed_eve(case, alpha, ge, rate), rel=1e-6)
    scaled = ScenarioScaling(alpha, beta)
    p_far = sop_closed_form(case, snrs_from_scenario(1e15, scaled), rate)
    assert p_far == pytest.approx(sop_limit(case, alpha, beta, rate), rel=1e-12)
    p = sop_closed_form(case, snrs_from_scenario(1e5, scaled), rate)
    excess = (p - sop_limit(case, alpha, beta, rate)) * 1e5
    assert excess == pytest.approx(slope_scaled_eve(case, alpha, beta, rate), rel=1e-3)


snr = st.floats(min_value=0.3, max_value=1e4)
eve = st.floats(min_value=1e-3, max_value=1e2)
rate = st.floats(min_value=0.1, max_value=3.0)


@settings(max_examples=300, deadline=None)
@given(snr, snr, eve, rate)
def test_range_and_directional_monotonicity(gr, gd, ge, r):
    s = SnrTriple(gr, gd, ge)
    up = 1.01
    for case in CASES:
        p = sop_closed_form(case, s, r)
        assert 0 <= p < 1
        if p > 1 - 1e-6:
            continue  # survival too small for strict comparisons
        assert sop_closed_form(case, s, r * up) > p
        assert sop_closed_form(case, SnrTriple(gr, gd, ge * up), r) > p
        assert sop_closed_form(case, SnrTriple(gr * up, gd, ge), r) < p
        assert sop_closed_form(case, SnrTriple(gr, gd * up, ge), r) < p


@settings(max_examples=300, deadline=None)
@given(snr, snr, eve, rate)
def test_case_symmetry_exact(gr, gd, ge, r):
    assert sop_closed_form("1", SnrTriple(gr, gd, ge), r) == \
        sop_closed_form("2", SnrTriple(gd, gr, ge), r)


@settings(max_examples=300, deadline=None)
@given(snr, snr, eve, rate)
def test_case3_factorization(gr, gd, ge, r):
    s = SnrTriple(gr, gd, ge)
    ls = {c: log_survival(c, s, r) for c in CASES}
    l0 = log_survival("1", SnrTriple(gr, gd, 0.0), r)
    s1, s2, s3, s0 = (math.exp(v) for v in (ls["1"], ls["2"], ls["3"], l0))
    assert s3 == pytest.approx(s1 * s2 / s0, rel=1e-12, abs=0)
    assert sop_closed_form("3", s, r) >= max(sop_closed_form("1", s, r), sop_closed_form("2", s, r))


def test_regimes_agree_as_beta_grows():
    gd, alpha = 100.0, 0.5
    gaps = []
    for beta in (1e2, 1e3, 1e4, 1e5, 1e6):
        ge = alpha * gd / beta
        a3 = sop_asymptotic("3", gd, ScenarioScaling(alpha, beta), r=1)
        a2 = sop_asymptotic("3", gd, ScenarioScaling(alpha), ge, r=1)
        gaps.append(abs(a3.approx - a2.approx) / a2.approx)
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-3


def test_limit_attainment():
    for case in CASES:
        for alpha, beta in ((0.5, 1), (2, 0.5), (1, 3)):
            scaled = ScenarioScaling(alpha, beta)
            for gd in (1e4, 1e5, 1e6):
                p = sop_closed_form(case, snrs_from_scenario(gd, scaled), 1)
                mhat = slope_scaled_eve(case, alpha, beta, 1)
                assert abs((p - sop_limit(case, alpha, beta, 1)) * gd - mhat) / mhat < 0.02


def test_ordering_examples():
    rep = ordering_predicates(SnrTriple(2 * 100, 100, 1), 2, 1, 1)
    m = rep.values
    assert m["M3"] > m["M1"] > m["M2"]
    assert rep.ok
    rep = ordering_predicates(SnrTriple(50, 100, 1), 0.5, 1, 1)
    v = rep.values
    assert v["P_lim3"] > v["P_lim2"] >= v["P_lim1"]
    assert v["M_hat1"] >= v["M_hat2"] > v["M_hat3"]
    assert rep.ok


@pytest.mark.parametrize("beta,r", [(0.3, 0.5), (1, 1), (7, 2.5)])
def test_alpha_one_symmetry(beta, r):
    v = ordering_predicates(SnrTriple(10, 10, 2), 1.0, beta, r).values
    assert v["M1"] == v["M2"]
    assert v["M_hat1"] == v["M_hat2"]
    assert v["P_lim1"] == v["P_lim2"]


def test_ordering_randomized_both_branches():
    rng = np.random.default_rng(5)
    branches = set()
    for _ in range(400):
        alpha = float(10 ** rng.uniform(-1.5, 1.5))
        beta = float(10 ** rng.uniform(-1.5, 1.5))
        r = float(rng.uniform(0.1, 3))
        gd = float(10 ** rng.uniform(0, 4))
        s = SnrTriple(alpha * gd, gd, float(10 ** rng.uniform(-1, 1.5)))
        if log_survival("3", s, r) < math.log(1e-2):
            continue
        rep = ordering_predicates(s, alpha, beta, r)
        assert rep.ok, (alpha, beta, r, rep.checks)
        branches.add(alpha > 1)
    assert branches == {True, False}


def test_published_outage_ordering_conflicts_with_closed_form():
    # gamma_d > gamma_r: the closed forms give P2 > P1.
    rep = ordering_predicates(SnrTriple(50, 100, 1.2589), 0.5, 1, 1)
    assert rep.checks["P3 > P2 > P1 (gamma_d > gamma_r)"]
    assert rep.published_ordering is False
