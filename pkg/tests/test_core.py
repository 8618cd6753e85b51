import math

import pytest
from hypothesis import given, strategies as st

from dfsecrecy.core import (
    CaseId,
    RateThreshold,
    ScenarioScaling,
    SnrTriple,
    ValidationError,
    db_to_linear,
    linear_to_db,
    snr_from_power,
    snrs_from_scenario,
)


@pytest.mark.parametrize("db,expected", [(0, 1.0), (10, 10.0), (3, 1.9952623149688795)])
def test_db_to_linear(db, expected):
    assert db_to_linear(db) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_db_to_linear_rejects_non_finite(bad):
    with pytest.raises(ValidationError):
        db_to_linear(bad)


@given(st.floats(min_value=-100, max_value=100))
def test_db_round_trip(x):
    assert linear_to_db(db_to_linear(x)) == pytest.approx(x, rel=1e-12, abs=1e-12)


def test_snr_from_power():
    assert snr_from_power(2, 1, 1, 1) == SnrTriple(1, 1, 1)
    s = snr_from_power(20, 1, 0.5, 10)
    assert (s.gamma_r, s.gamma_d, s.gamma_e) == pytest.approx((10, 20, 1))


@pytest.mark.parametrize("args", [(0, 1, 1, 1), (-1, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, -2)])
def test_snr_from_power_rejects_non_positive(args):
    with pytest.raises(ValidationError):
        snr_from_power(*args)


def test_snrs_from_scenario_examples():
    s = snrs_from_scenario(100, ScenarioScaling(0.5), gamma_e_fixed=1.2589)
    assert (s.gamma_r, s.gamma_d, s.gamma_e) == (50, 100, 1.2589)
    s = snrs_from_scenario(100, ScenarioScaling(0.5, 1))
    assert (s.gamma_r, s.gamma_d, s.gamma_e) == (50, 100, 50)
    assert snrs_from_scenario(10, ScenarioScaling(1, 1)) == SnrTriple(10, 10, 10)


def test_snrs_from_scenario_needs_exactly_one_eve_spec():
    with pytest.raises(ValidationError):
        snrs_from_scenario(10, ScenarioScaling(1, 1), gamma_e_fixed=1.0)
    with pytest.raises(ValidationError):
        snrs_from_scenario(10, ScenarioScaling(1))


pos = st.floats(min_value=1e-3, max_value=1e5)


@given(pos, pos, pos)
def test_scaled_scenario_ratios(gd, alpha, beta):
    s = snrs_from_scenario(gd, ScenarioScaling(alpha, beta))
    assert s.gamma_r == alpha * gd
    # gamma_r / beta is not always exactly invertible in binary floating point
    assert math.isclose(beta * s.gamma_e, s.gamma_r, rel_tol=4 * 2.0**-52)


@pytest.mark.parametrize("kwargs", [
    dict(gamma_r=0, gamma_d=1, gamma_e=1),
    dict(gamma_r=1, gamma_d=-1, gamma_e=1),
    dict(gamma_r=1, gamma_d=1, gamma_e=-0.1),
    dict(gamma_r=math.inf, gamma_d=1, gamma_e=1),
    dict(gamma_r=1, gamma_d=1, gamma_e=math.nan),
])
def test_snr_triple_invariants(kwargs):
    with pytest.raises(ValidationError):
        SnrTriple(**kwargs)


def test_absent_eavesdropper_allowed():
    s = SnrTriple(1, 1, 0)
    assert s.to_db()[2] == -math.inf


@pytest.mark.parametrize("r", [0, -1, math.nan])
def test_rate_must_be_positive(r):
    with pytest.raises(ValidationError):
        RateThreshold(r)


@pytest.mark.parametrize("alpha,beta", [(0, None), (-1, 1), (1, 0)])
def test_scaling_invariants(alpha, beta):
    with pytest.raises(ValidationError):
        ScenarioScaling(alpha, beta)


@pytest.mark.parametrize("raw,case", [
    ("1", CaseId.CASE1), (2, CaseId.CASE2), ("III", CaseId.CASE3), ("1conv", CaseId.CASE1_CONV),
])
def test_case_parse(raw, case):
    assert CaseId.parse(raw) is case


def test_case_parse_unknown():
    with pytest.raises(ValidationError):
        CaseId.parse("4")
