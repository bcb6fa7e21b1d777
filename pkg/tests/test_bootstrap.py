import numpy as np
import pytest

from seedpower.bootstrap_test import (
    DEFAULT_B_SAMPLES,
    BootstrapConfig,
    BootstrapResult,
    bootstrap_diff_ci,
    resample,
)
from seedpower.errors import DomainError, InsufficientDataError
from seedpower.rng import GENERATOR_ID, substream
from seedpower.sample_model import PerformanceSample, SummaryStats


def test_resample_golden_substream():
    # Frozen draw: the first five index draws of substream(42, 0) over
    # range(5) are [1, 4, 1, 0, 4].
    out = resample(PerformanceSample("g", (1.0, 2.0, 3.0, 4.0, 5.0)),
                   substream(42, 0))
    assert out.values == (2.0, 5.0, 2.0, 1.0, 5.0)
    assert out.label == "g"


def test_resample_preserves_size_and_membership():
    sample = PerformanceSample("g", tuple(float(v) for v in range(17)))
    out = resample(sample, substream(9, 4))
    assert len(out.values) == 17
    assert set(out.values) <= set(sample.values)


def test_config_validation():
    with pytest.raises(DomainError):
        BootstrapConfig(b_samples=0)
    with pytest.raises(DomainError):
        BootstrapConfig(alpha=1.5)
    with pytest.raises(DomainError):
        BootstrapConfig(rng_seed=-1)
    assert DEFAULT_B_SAMPLES == 10000


def test_ci_brackets_mean_difference(raw_pair):
    a, b = raw_pair
    cfg = BootstrapConfig(b_samples=4000, rng_seed=3)
    res = bootstrap_diff_ci(a, b, cfg)
    assert res.ci_lo < res.mean_diff < res.ci_hi
    assert res.b_samples == 4000
    assert res.rng_seed == 3
    assert res.generator_id == GENERATOR_ID


def test_reject_iff_zero_outside_closed_interval():
    rng = np.random.default_rng(5)
    shifted = PerformanceSample("hi", tuple(rng.normal(10.0, 1.0, size=12)))
    base = PerformanceSample("lo", tuple(rng.normal(0.0, 1.0, size=12)))
    res = bootstrap_diff_ci(shifted, base, BootstrapConfig(b_samples=2000))
    assert res.reject_h0
    assert res.ci_lo > 0.0
    same = bootstrap_diff_ci(base, base, BootstrapConfig(b_samples=2000))
    assert not same.reject_h0


def test_small_sample_warning_flag(raw_pair):
    a, b = raw_pair
    res = bootstrap_diff_ci(a, b, BootstrapConfig(b_samples=1000, rng_seed=0))
    assert res.small_sample_warning  # n=5 < 20
    rng = np.random.default_rng(1)
    big_a = PerformanceSample("a", tuple(rng.normal(0, 1, 25)))
    big_b = PerformanceSample("b", tuple(rng.normal(0, 1, 25)))
    res_big = bootstrap_diff_ci(big_a, big_b, BootstrapConfig(b_samples=1000))
    assert not res_big.small_sample_warning


def test_low_b_raises_user_warning(raw_pair):
    a, b = raw_pair
    with pytest.warns(UserWarning):
        bootstrap_diff_ci(a, b, BootstrapConfig(b_samples=200))


def test_determinism_across_jobs(raw_pair):
    a, b = raw_pair
    cfg = BootstrapConfig(b_samples=3000, rng_seed=11)
    results = [bootstrap_diff_ci(a, b, cfg, jobs=j) for j in (1, 4, 8)]
    for res in results[1:]:
        assert res.ci_lo == results[0].ci_lo
        assert res.ci_hi == results[0].ci_hi
        assert res.mean_diff == results[0].mean_diff


def test_determinism_across_runs(raw_pair):
    a, b = raw_pair
    cfg = BootstrapConfig(b_samples=1000, rng_seed=7)
    first = bootstrap_diff_ci(a, b, cfg)
    second = bootstrap_diff_ci(a, b, cfg)
    assert first == second


def test_seed_changes_interval(raw_pair):
    a, b = raw_pair
    r0 = bootstrap_diff_ci(a, b, BootstrapConfig(b_samples=1000, rng_seed=0))
    r1 = bootstrap_diff_ci(a, b, BootstrapConfig(b_samples=1000, rng_seed=1))
    assert (r0.ci_lo, r0.ci_hi) != (r1.ci_lo, r1.ci_hi)


def test_percentile_matches_numpy_linear_interpolation(raw_pair):
    # Reconstruct the replicate set independently and check the interval is
    # exactly the linearly interpolated percentile pair.
    a, b = raw_pair
    cfg = BootstrapConfig(b_samples=257, alpha=0.1, rng_seed=2)
    with pytest.warns(UserWarning):
        res = bootstrap_diff_ci(a, b, cfg)
    diffs = np.empty(257)
    arr_a = np.asarray(a.values)
    arr_b = np.asarray(b.values)
    for i in range(257):
        rng = substream(2, i)
        idx_a = rng.integers(0, arr_a.size, size=arr_a.size)
        idx_b = rng.integers(0, arr_b.size, size=arr_b.size)
        diffs[i] = arr_a[idx_a].mean() - arr_b[idx_b].mean()
    lo, hi = np.quantile(diffs, [0.05, 0.95], method="linear")
    assert res.ci_lo == lo
    assert res.ci_hi == hi


def test_summary_stats_rejected():
    summary = SummaryStats(5, 1.0, 1.0, "s")
    raw = PerformanceSample("r", (1.0, 2.0, 3.0))
    with pytest.raises((InsufficientDataError, DomainError)):
        bootstrap_diff_ci(summary, raw, BootstrapConfig(b_samples=1000))


def test_result_is_frozen(raw_pair):
    a, b = raw_pair
    res = bootstrap_diff_ci(a, b, BootstrapConfig(b_samples=1000))
    assert isinstance(res, BootstrapResult)
    with pytest.raises(AttributeError):
        res.ci_lo = 0.0
