import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seedpower.errors import DegenerateSampleError, DomainError, InsufficientDataError
from seedpower.sample_model import PerformanceSample, SummaryStats
from seedpower.welch_test import (
    Tail,
    TestConfig,
    bonferroni,
    confidence_intervals,
    p_value,
    pooled_statistic,
    run_welch,
    welch_statistic,
)

scipy_stats = pytest.importorskip("scipy.stats")


def test_welch_statistic_pilot_values(pilot_a, pilot_b):
    t, nu = welch_statistic(pilot_a, pilot_b)
    assert t == pytest.approx(1.8539462763836074, abs=1e-12)
    assert nu == pytest.approx(7.361607416924646, abs=1e-9)


def test_welch_statistic_orientation(pilot_a, pilot_b):
    t_ab, nu_ab = welch_statistic(pilot_a, pilot_b)
    t_ba, nu_ba = welch_statistic(pilot_b, pilot_a)
    assert t_ba == pytest.approx(-t_ab, abs=1e-12)
    assert nu_ba == pytest.approx(nu_ab, abs=1e-12)


def test_welch_statistic_matches_scipy_on_raw(raw_pair):
    a, b = raw_pair
    t, _ = welch_statistic(a, b)
    expected = scipy_stats.ttest_ind(a.values, b.values, equal_var=False)
    assert t == pytest.approx(expected.statistic, abs=1e-10)
    cfg = TestConfig(alpha=0.05, tail=Tail.TWO)
    res = run_welch(a, b, cfg)
    assert res.p_value == pytest.approx(expected.pvalue, abs=1e-10)


def test_pooled_statistic_matches_scipy(raw_pair):
    a, b = raw_pair
    t, nu = pooled_statistic(a, b)
    expected = scipy_stats.ttest_ind(a.values, b.values, equal_var=True)
    assert t == pytest.approx(expected.statistic, abs=1e-10)
    assert nu == len(a.values) + len(b.values) - 2


def test_pooled_equal_sizes_same_t_different_nu(pilot_a, pilot_b):
    # With N1 == N2 the pooled and Welch t statistics coincide; only the
    # degrees of freedom differ.
    t_w, nu_w = welch_statistic(pilot_a, pilot_b)
    t_p, nu_p = pooled_statistic(pilot_a, pilot_b)
    assert t_p == pytest.approx(t_w, abs=1e-12)
    assert nu_p == 8
    assert nu_w < nu_p


def test_p_value_tail_conventions():
    nu = 7.361607416924646
    t = 1.8539462763836074
    two = p_value(t, nu, Tail.TWO)
    pos = p_value(t, nu, Tail.ONE_POSITIVE)
    neg = p_value(t, nu, Tail.ONE_NEGATIVE)
    assert two == pytest.approx(0.10407489, abs=1e-6)
    assert pos == pytest.approx(two / 2.0, abs=1e-12)
    assert pos + neg == pytest.approx(1.0, abs=1e-12)
    assert p_value(0.0, 10.0, Tail.TWO) == pytest.approx(1.0, abs=1e-12)


def test_run_welch_pilot_decision(pilot_a, pilot_b):
    res = run_welch(pilot_a, pilot_b, TestConfig(alpha=0.05, tail=Tail.TWO))
    assert not res.reject_h0
    assert res.p_value == pytest.approx(0.104075, abs=1e-5)
    # CI1 straddles zero and CI2 contains the observed difference
    assert res.ci1[0] < 0.0 < res.ci1[1]
    assert res.ci2[0] < res.diff.mean_diff < res.ci2[1]


def test_confidence_interval_one_tail_open_sides(pilot_a, pilot_b):
    from seedpower.sample_model import difference_stats

    diff = difference_stats(pilot_a, pilot_b)
    _, nu = welch_statistic(pilot_a, pilot_b)
    ci1, ci2 = confidence_intervals(diff, nu, alpha=0.05, tail=Tail.ONE_POSITIVE)
    assert math.isinf(ci1[1]) and ci1[1] > 0
    assert math.isinf(ci2[0]) and ci2[0] < 0
    ci1n, ci2n = confidence_intervals(diff, nu, alpha=0.05, tail=Tail.ONE_NEGATIVE)
    assert math.isinf(ci1n[0]) and ci1n[0] < 0
    assert math.isinf(ci2n[1]) and ci2n[1] > 0


def test_raw_and_summary_inputs_agree(raw_pair):
    a, b = raw_pair
    cfg = TestConfig()
    from seedpower.sample_model import summarize

    res_raw = run_welch(a, b, cfg)
    res_sum = run_welch(summarize(a), summarize(b), cfg)
    assert res_raw.t_stat == pytest.approx(res_sum.t_stat, abs=1e-12)
    assert res_raw.p_value == pytest.approx(res_sum.p_value, abs=1e-12)


def test_degenerate_and_insufficient_inputs():
    flat = PerformanceSample("flat", (2.0, 2.0, 2.0))
    also_flat = PerformanceSample("also", (3.0, 3.0, 3.0))
    with pytest.raises(DegenerateSampleError):
        welch_statistic(flat, also_flat)
    with pytest.raises(InsufficientDataError):
        welch_statistic(PerformanceSample("tiny", (1.0,)),
                        PerformanceSample("ok", (1.0, 2.0)))
    # one flat group is fine, the pooled spread carries the test
    spread = PerformanceSample("spread", (1.0, 2.0, 3.0))
    t, _ = welch_statistic(spread, flat)
    assert math.isfinite(t)


def test_test_config_validation():
    with pytest.raises(DomainError):
        TestConfig(alpha=0.0)
    with pytest.raises(DomainError):
        TestConfig(alpha=1.0)
    with pytest.raises(DomainError):
        TestConfig(variant="student")


def test_bonferroni():
    assert bonferroni(0.05, 10) == pytest.approx(0.005)
    assert bonferroni(0.05, 1) == pytest.approx(0.05)
    with pytest.raises(DomainError):
        bonferroni(0.05, 0)


_summary = st.builds(
    SummaryStats,
    n=st.integers(min_value=2, max_value=60),
    mean=st.floats(min_value=-100.0, max_value=100.0),
    std=st.floats(min_value=0.01, max_value=50.0),
)


@given(a=_summary, b=_summary,
       alpha=st.floats(min_value=0.001, max_value=0.3))
@settings(max_examples=300, deadline=None)
def test_decision_equivalence_two_tail(a, b, alpha):
    # Rejecting by p-value, by the CI on the difference, and by the CI
    # around zero must always agree.
    res = run_welch(a, b, TestConfig(alpha=alpha, tail=Tail.TWO))
    by_p = res.p_value < alpha
    by_ci1 = not (res.ci1[0] <= 0.0 <= res.ci1[1])
    by_ci2 = not (res.ci2[0] <= res.diff.mean_diff <= res.ci2[1])
    assert by_p == by_ci1 == by_ci2 == res.reject_h0


@given(a=_summary, b=_summary,
       alpha=st.floats(min_value=0.001, max_value=0.3),
       tail=st.sampled_from([Tail.ONE_POSITIVE, Tail.ONE_NEGATIVE]))
@settings(max_examples=200, deadline=None)
def test_decision_equivalence_one_tail(a, b, alpha, tail):
    res = run_welch(a, b, TestConfig(alpha=alpha, tail=tail))
    by_p = res.p_value < alpha
    by_ci1 = not (res.ci1[0] <= 0.0 <= res.ci1[1])
    assert by_p == by_ci1 == res.reject_h0


def test_welch_result_is_frozen(pilot_a, pilot_b):
    res = run_welch(pilot_a, pilot_b, TestConfig())
    with pytest.raises(AttributeError):
        res.p_value = 0.0
