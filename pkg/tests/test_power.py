import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seedpower.errors import DomainError, UnattainableTargetError
from seedpower.power_analysis import (
    DEFAULT_SAFETY_FACTOR,
    PowerQuery,
    beta_error,
    power_curve,
    required_sample_size,
    safety_margin,
)

PILOT = PowerQuery(s1=1341.0, s2=990.0, effect_size=1382.0, alpha=0.05)


def test_beta_error_published_anchors():
    assert beta_error(PILOT, 5) == pytest.approx(0.51, abs=0.01)
    assert beta_error(PILOT, 10) == pytest.approx(0.19, abs=0.01)


def test_beta_error_regression_values():
    # Frozen to full precision as a change detector.
    assert beta_error(PILOT, 5) == pytest.approx(0.5103051213100476, abs=1e-9)
    assert beta_error(PILOT, 10) == pytest.approx(0.19582202690136447, abs=1e-9)


def test_beta_error_monotone_in_n():
    previous = 1.0
    for n in range(2, 60):
        current = beta_error(PILOT, n)
        assert current < previous
        previous = current
    assert beta_error(PILOT, 59) < 1e-4


def test_beta_error_monotone_in_effect():
    # A bigger true effect is easier to detect.
    betas = [beta_error(PowerQuery(s1=1.0, s2=1.0, effect_size=e), 10)
             for e in (0.2, 0.5, 0.9, 1.5)]
    assert betas == sorted(betas, reverse=True)


def test_beta_error_bounds_and_validation():
    assert 0.0 < beta_error(PILOT, 3) < 1.0
    with pytest.raises(DomainError):
        beta_error(PILOT, 1)
    with pytest.raises(DomainError):
        PowerQuery(s1=-1.0, s2=1.0, effect_size=1.0)
    with pytest.raises(DomainError):
        PowerQuery(s1=0.0, s2=0.0, effect_size=1.0)
    with pytest.raises(DomainError):
        PowerQuery(s1=1.0, s2=1.0, effect_size=0.0)
    with pytest.raises(DomainError):
        PowerQuery(s1=1.0, s2=1.0, effect_size=1.0, alpha=0.0)


def test_required_sample_size_published_anchors():
    assert required_sample_size(PILOT, 0.2, 50) == 10
    assert required_sample_size(
        PowerQuery(s1=1.0, s2=1.0, effect_size=0.9), 0.2, 50) == 17
    assert required_sample_size(
        PowerQuery(s1=0.6, s2=0.6, effect_size=0.9), 0.2, 50) == 7


def test_required_sample_size_is_minimal():
    n = required_sample_size(PILOT, 0.2, 50)
    assert beta_error(PILOT, n) <= 0.2
    assert beta_error(PILOT, n - 1) > 0.2


def test_required_sample_size_unattainable():
    weak = PowerQuery(s1=1341.0, s2=990.0, effect_size=100.0)
    with pytest.raises(UnattainableTargetError) as excinfo:
        required_sample_size(weak, 0.2, 20)
    err = excinfo.value
    assert err.n_max == 20
    assert err.beta_at_n_max == pytest.approx(beta_error(weak, 20), abs=1e-12)
    assert err.beta_at_n_max > 0.2


def test_safety_margin_rounding():
    assert DEFAULT_SAFETY_FACTOR == 1.5
    assert safety_margin(10) == 15
    assert safety_margin(5) == 8          # 7.5 rounds up
    assert safety_margin(4) == 6
    assert safety_margin(7, 17.0 / 7.0) == 17   # exact product stays exact
    assert safety_margin(3, 1.0) == 3
    with pytest.raises(DomainError):
        safety_margin(0)
    with pytest.raises(DomainError):
        safety_margin(5, 0.5)


def test_power_curve_grid_shape():
    curve = power_curve(PILOT, range(2, 12), [691.0, 1382.0])
    rows = curve.rows()
    assert len(rows) == 20
    # sorted by (effect, n); beta decreasing within each effect
    assert rows[0][:2] == (691.0, 2)
    assert rows[10][:2] == (1382.0, 2)
    for block in (rows[:10], rows[10:]):
        betas = [r[2] for r in block]
        assert betas == sorted(betas, reverse=True)
    # grid values match pointwise evaluation
    q = PowerQuery(s1=PILOT.s1, s2=PILOT.s2, effect_size=691.0, alpha=PILOT.alpha)
    assert rows[3][2] == pytest.approx(beta_error(q, 5), abs=1e-15)


def test_power_curve_dedupes_and_sorts():
    curve = power_curve(PILOT, [5, 2, 5, 3], [1382.0])
    assert [r[1] for r in curve.rows()] == [2, 3, 5]


@given(n=st.integers(min_value=2, max_value=80),
       s1=st.floats(min_value=0.05, max_value=20.0),
       s2=st.floats(min_value=0.05, max_value=20.0),
       effect=st.floats(min_value=0.01, max_value=30.0),
       alpha=st.floats(min_value=0.005, max_value=0.2))
@settings(max_examples=150, deadline=None)
def test_beta_error_always_a_probability(n, s1, s2, effect, alpha):
    beta = beta_error(PowerQuery(s1=s1, s2=s2, effect_size=effect, alpha=alpha), n)
    assert 0.0 <= beta < 1.0
    assert math.isfinite(beta)


@given(n=st.integers(min_value=1, max_value=200),
       factor=st.floats(min_value=1.0, max_value=4.0))
@settings(max_examples=200, deadline=None)
def test_safety_margin_properties(n, factor):
    out = safety_margin(n, factor)
    assert out >= n
    assert out >= n * factor - 1e-6
    assert out < n * factor + 1.0
