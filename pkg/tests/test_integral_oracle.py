import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from agmpi.integral_oracle import (
    QuadratureError,
    QuadratureSettings,
    agm_float,
    beta_value,
    check_agm_invariance,
    check_agm_value,
    check_beta_quarter_product,
    check_beta_relation,
    check_gamma_half,
    check_gamma_recurrence,
    check_gauss_formula,
    check_L_difference,
    check_L_sum,
    check_lemniscate_product,
    check_scaling,
    check_sum_identity,
    checks_to_json,
    checks_to_text,
    gamma_value,
    integral_I,
    integral_L,
    run_oracle,
    simpson,
)

IR2 = math.sqrt(0.5)
R2 = math.sqrt(2.0)
# mpmath: pi / (2 AGM(1, 1/sqrt 2))
I_1_IR2 = 1.8540746773013719184


def test_settings_validation():
    with pytest.raises(ValueError):
        QuadratureSettings(target_tol=0)
    with pytest.raises(ValueError):
        QuadratureSettings(max_refinements=3)


def test_simpson_gives_up():
    qs = QuadratureSettings(target_tol=1e-300, max_refinements=4)
    with pytest.raises(QuadratureError):
        simpson(lambda x: x**0.5, 0.0, 1.0, qs)


def test_I_examples():
    assert integral_I(1, 1) == pytest.approx(math.pi / 2, abs=1e-12)
    assert integral_I(1, IR2) == pytest.approx(I_1_IR2, abs=1e-11)
    assert integral_I(2, 2) == pytest.approx(math.pi / 4, abs=1e-12)


def test_L_examples():
    assert integral_L(1, 1) == pytest.approx(math.pi / 4, abs=1e-12)
    assert check_lemniscate_product().passed
    assert check_L_sum(1, IR2).passed


def test_nonpositive_arguments():
    for f in (integral_I, integral_L, agm_float):
        with pytest.raises(ValueError):
            f(0.0, 1.0)
    with pytest.raises(ValueError):
        gamma_value(-0.5)


@given(st.floats(0.05, 20), st.floats(0.05, 20))
@settings(max_examples=25, deadline=None)
def test_I_symmetry(a, b):
    assert abs(integral_I(a, b) - integral_I(b, a)) < 2e-11


def test_agm_float():
    assert agm_float(1.0, IR2) == pytest.approx(0.84721308479397908661, abs=1e-15)
    assert agm_float(4.0, 4.0) == 4.0


def test_invariance():
    assert all(c.passed for c in check_agm_invariance(1, IR2, 4))
    assert all(c.passed for c in check_agm_invariance(2, 1, 3))
    for c in check_agm_invariance(1.5, 1.5, 3):
        assert c.abs_dev < 1e-13


def test_agm_value():
    c = check_agm_value(1, 1)
    assert c.lhs == pytest.approx(math.pi / 2) and c.rhs == pytest.approx(math.pi / 2)
    assert check_agm_value(1, IR2).passed
    assert check_agm_value(3, 2).passed


def test_L_difference():
    assert check_L_difference(1, IR2).passed
    assert check_L_difference(2, 1).passed
    c = check_L_difference(1.3, 1.3)
    assert c.lhs == 0 and c.rhs == 0


def test_sum_identity():
    assert check_sum_identity(1, IR2, 30).passed
    assert check_sum_identity(R2, 1, 30).passed
    c = check_sum_identity(0.7, 0.7, 30)
    assert c.lhs == 0 and c.rhs == 0


def test_scaling():
    c = check_scaling(1, IR2, 1.0)
    assert c.abs_dev == 0
    # I(1, 1/sqrt 2) = sqrt 2 I(sqrt 2, 1)
    c = check_scaling(R2, 1, IR2)
    assert c.passed
    assert c.lhs == pytest.approx(R2 * integral_I(R2, 1), abs=1e-12)
    assert check_scaling(1, 0.5, 3).passed


def test_gauss_formula_truncation():
    assert check_gauss_formula().abs_dev < 1e-12
    assert not check_gauss_formula(terms=1).passed
    assert check_gauss_formula(terms=10).passed


def test_gamma_values():
    assert gamma_value(1.0) == pytest.approx(1.0, abs=1e-9)
    assert gamma_value(0.5) == pytest.approx(1.7724538509055160, abs=1e-8)
    assert gamma_value(1.5) == pytest.approx(0.5 * gamma_value(0.5), abs=1e-8)
    assert check_gamma_half().passed
    assert check_gamma_recurrence(0.5).passed
    assert check_gamma_recurrence(2.25).passed


@pytest.mark.parametrize("u", [0.25, 1 / 3, 0.75, 1.0, 2.5, 4.0])
def test_gamma_against_stdlib(u):
    assert gamma_value(u) == pytest.approx(math.gamma(u), abs=1e-8)


@given(st.floats(0.15, 6))
@settings(max_examples=20, deadline=None)
def test_gamma_property(u):
    assert gamma_value(u) == pytest.approx(math.gamma(u), abs=1e-8)


def test_beta_values():
    assert beta_value(1, 1) == pytest.approx(1.0, abs=1e-12)
    assert beta_value(2, 3) == pytest.approx(1 / 12, abs=1e-10)
    assert check_beta_relation(1, 1).passed
    assert check_beta_relation(2, 3).passed
    assert check_beta_quarter_product().passed


@given(st.floats(0.2, 4), st.floats(0.2, 4))
@settings(max_examples=15, deadline=None)
def test_beta_against_stdlib(u, v):
    ref = math.gamma(u) * math.gamma(v) / math.gamma(u + v)
    assert beta_value(u, v) == pytest.approx(ref, abs=1e-6)


def test_run_oracle_all_pass():
    checks = run_oracle()
    assert len(checks) >= 20
    failed = [c.name for c in checks if not c.passed]
    assert failed == []
    assert all(c.tol in (1e-9, 1e-7, 1e-12) for c in checks)


def test_halving_tolerance_is_self_consistent():
    coarse = run_oracle(QuadratureSettings(target_tol=1e-9))
    fine = run_oracle(QuadratureSettings(target_tol=5e-10))
    for a, b in zip(coarse, fine):
        assert a.name == b.name
        assert b.abs_dev <= a.abs_dev + 1e-9


def test_serialisation():
    checks = run_oracle()[:3]
    data = json.loads(checks_to_json(checks))
    assert data[0]["passed"] is True
    assert checks_to_text(checks).startswith("PASS")
