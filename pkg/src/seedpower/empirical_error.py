"""Monte Carlo calibration of the tests themselves.

A test promises a false-positive rate of alpha; whether it keeps that
promise on a given kind of data is an empirical question.  This module
answers it by simulation:

* type-I from a pool: draw two fictive groups from one algorithm's own
  measurements (the null is true by construction), test them, repeat, and
  report how often the test cries difference;
* type-I synthetic: the same, drawing both groups from a chosen synthetic
  distribution;
* type-II synthetic: draw the groups from two different distributions and
  report how often the one-tail test misses the real gap, the empirical
  counterpart of the analytic beta curve;
* a standard-deviation study quantifying how badly small samples
  underestimate spread, which is what quietly sinks sample-size plans built
  on pilot estimates;
* a familywise-rate check for corrected multiple comparisons.

Every rate comes with a 95% Wilson interval.  Trial ``i`` draws from the
stream keyed ``(rng_seed, i)``; within one trial every draw (group draws
first, then any inner bootstrap resampling) consumes that single stream
sequentially.  Reports are therefore byte-identical at any thread count,
and two studies run with the same seed reuse the same per-trial streams,
which pairs their trials and sharpens test-versus-test contrasts.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .distributions import t_cdf_batch
from .errors import DomainError, InsufficientDataError
from .rng import substream
from .sample_model import PerformanceSample
from .welch_test import Tail

__all__ = [
    "SyntheticDistribution",
    "CalibrationConfig",
    "CalibrationReport",
    "StdStudyRow",
    "wilson_interval",
    "empirical_type1_from_pool",
    "empirical_type1_synthetic",
    "empirical_type2_synthetic",
    "empirical_fwer",
    "std_estimation_study",
]

# Upper 97.5% point of the standard normal: fixed so that Wilson bounds are
# reproducible to the last bit across platforms.
_WILSON_Z = 1.959963984540054

# Cap on elements drawn per chunk in the std study; bounds peak memory while
# leaving the stream, and therefore the results, unchanged.
_STD_STUDY_BLOCK = 10_000_000


@dataclass(frozen=True)
class SyntheticDistribution:
    """Population to draw synthetic measurements from.

    ``normal`` uses (mu, sigma).  ``bimodal`` is a two-component normal
    mixture with common sigma: component means mu and mu2, first-component
    weight ``weight``.  ``lognormal`` draws exp(Normal(mu, sigma)).
    """

    kind: str
    mu: float
    sigma: float
    mu2: float | None = None
    weight: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("normal", "bimodal", "lognormal"):
            raise DomainError(
                f"kind must be normal, bimodal, or lognormal, got {self.kind!r}"
            )
        if not math.isfinite(self.mu):
            raise DomainError(f"mu must be finite, got {self.mu!r}")
        if not math.isfinite(self.sigma) or self.sigma <= 0.0:
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")
        if self.kind == "bimodal":
            if self.mu2 is None or not math.isfinite(self.mu2):
                raise DomainError("bimodal needs a finite second component mean")
            weight = 0.5 if self.weight is None else self.weight
            if not 0.0 < weight < 1.0:
                raise DomainError(f"mixture weight must lie in (0, 1), got {self.weight!r}")
            object.__setattr__(self, "weight", weight)
        elif self.mu2 is not None or self.weight is not None:
            raise DomainError(f"{self.kind} takes no mu2 or weight")

    @classmethod
    def normal(cls, mu: float, sigma: float) -> "SyntheticDistribution":
        return cls(kind="normal", mu=mu, sigma=sigma)

    @classmethod
    def bimodal(cls, mu: float, mu2: float, sigma: float,
                weight: float = 0.5) -> "SyntheticDistribution":
        return cls(kind="bimodal", mu=mu, sigma=sigma, mu2=mu2, weight=weight)

    @classmethod
    def lognormal(cls, mu: float, sigma: float) -> "SyntheticDistribution":
        return cls(kind="lognormal", mu=mu, sigma=sigma)

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` values, consuming the generator deterministically."""
        if self.kind == "normal":
            return rng.normal(self.mu, self.sigma, size)
        if self.kind == "lognormal":
            return rng.lognormal(self.mu, self.sigma, size)
        component = rng.random(size) < self.weight
        noise = rng.normal(0.0, self.sigma, size)
        return noise + np.where(component, self.mu, self.mu2)

    def describe(self) -> str:
        if self.kind == "bimodal":
            return (f"bimodal(mu={self.mu:g}, mu2={self.mu2:g}, "
                    f"sigma={self.sigma:g}, weight={self.weight:g})")
        return f"{self.kind}(mu={self.mu:g}, sigma={self.sigma:g})"


@dataclass(frozen=True)
class CalibrationConfig:
    """How many trials, at what group size, with which test."""

    group_size: int
    trials: int = 1000
    test: str = "welch"
    alpha: float = 0.05
    rng_seed: int = 0
    bootstrap_b: int = 1000

    def __post_init__(self) -> None:
        if not isinstance(self.group_size, int) or isinstance(self.group_size, bool) \
                or self.group_size < 2:
            raise DomainError(f"group_size must be an integer >= 2, got {self.group_size!r}")
        if not isinstance(self.trials, int) or isinstance(self.trials, bool) or self.trials < 1:
            raise DomainError(f"trials must be a positive integer, got {self.trials!r}")
        if self.test not in ("welch", "bootstrap"):
            raise DomainError(f"test must be 'welch' or 'bootstrap', got {self.test!r}")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie strictly inside (0, 1), got {self.alpha!r}")
        if not isinstance(self.rng_seed, int) or isinstance(self.rng_seed, bool) \
                or not 0 <= self.rng_seed < 2**64:
            raise DomainError(f"rng_seed must be an unsigned 64-bit integer, got {self.rng_seed!r}")
        if not isinstance(self.bootstrap_b, int) or isinstance(self.bootstrap_b, bool) \
                or self.bootstrap_b < 1:
            raise DomainError(f"bootstrap_b must be a positive integer, got {self.bootstrap_b!r}")


@dataclass(frozen=True)
class CalibrationReport:
    """Counted rate of one study with its Monte Carlo uncertainty.

    ``rejection_rate`` is the fraction of trials on which the study's
    counted event occurred: a rejection for the type-I and familywise
    studies, a failure to reject for the type-II study (whose rate estimates
    beta).  ``degenerate_trials`` counts trials whose groups had zero
    combined spread; those never reject and are flagged rather than dropped.
    """

    study: str
    rejection_rate: float
    trials: int
    wilson_lo: float
    wilson_hi: float
    degenerate_trials: int
    config: CalibrationConfig


@dataclass(frozen=True)
class StdStudyRow:
    """Sampling behavior of the unbiased std estimator at one group size."""

    n: int
    mean_s: float
    std_s: float


def wilson_interval(successes: int, trials: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion.

    Always contains the point estimate and stays inside [0, 1], including at
    the 0/n and n/n boundaries where the naive interval collapses.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials!r}")
    if not 0 <= successes <= trials:
        raise DomainError(f"successes must lie in [0, {trials}], got {successes!r}")
    z = _WILSON_Z
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2.0 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials
                         + z * z / (4.0 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def _run_indexed(total: int, jobs: int, work: Callable[[int, int], None]) -> None:
    # Split [0, total) into contiguous chunks.  Every trial owns its RNG
    # stream and its slot in preallocated arrays, so the chunking is
    # invisible in the results.
    if jobs < 1:
        raise DomainError(f"jobs must be >= 1, got {jobs!r}")
    if jobs == 1 or total < 2 * jobs:
        work(0, total)
        return
    bounds = np.linspace(0, total, jobs + 1, dtype=int)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(work, int(lo), int(hi))
                   for lo, hi in zip(bounds[:-1], bounds[1:])]
        for future in futures:
            future.result()


def _welch_decisions(mean_1: np.ndarray, var_1: np.ndarray,
                     mean_2: np.ndarray, var_2: np.ndarray,
                     n: int, alpha: float, tail: Tail) -> tuple[np.ndarray, np.ndarray]:
    # Vectorized unequal-variance test over all trials at once.  Degenerate
    # trials (zero combined spread) are reported separately and never count
    # as rejections.
    per_1 = var_1 / n
    per_2 = var_2 / n
    se_squared = per_1 + per_2
    degenerate = se_squared == 0.0
    safe = np.where(degenerate, 1.0, se_squared)
    t = (mean_1 - mean_2) / np.sqrt(safe)
    nu_denom = (per_1 * per_1 + per_2 * per_2) / (n - 1)
    nu = np.where(degenerate, 1.0, safe * safe / np.where(degenerate, 1.0, nu_denom))
    if tail is Tail.TWO:
        p = 2.0 * (1.0 - t_cdf_batch(np.abs(t), nu))
    elif tail is Tail.ONE_POSITIVE:
        p = 1.0 - t_cdf_batch(t, nu)
    else:
        p = t_cdf_batch(t, nu)
    reject = ~degenerate & (p < alpha)
    return reject, degenerate


def _run_welch_study(cfg: CalibrationConfig, jobs: int, tail: Tail,
                     draw_groups: Callable[[np.random.Generator], tuple[np.ndarray, np.ndarray]],
                     ) -> tuple[int, int]:
    n = cfg.group_size
    mean_1 = np.empty(cfg.trials)
    var_1 = np.empty(cfg.trials)
    mean_2 = np.empty(cfg.trials)
    var_2 = np.empty(cfg.trials)

    def work(start: int, stop: int) -> None:
        for i in range(start, stop):
            rng = substream(cfg.rng_seed, i)
            first, second = draw_groups(rng)
            mean_1[i] = first.mean()
            var_1[i] = first.var(ddof=1)
            mean_2[i] = second.mean()
            var_2[i] = second.var(ddof=1)

    _run_indexed(cfg.trials, jobs, work)
    reject, degenerate = _welch_decisions(mean_1, var_1, mean_2, var_2,
                                          n, cfg.alpha, tail)
    return int(reject.sum()), int(degenerate.sum())


def _run_bootstrap_study(cfg: CalibrationConfig, jobs: int,
                         draw_groups: Callable[[np.random.Generator], tuple[np.ndarray, np.ndarray]],
                         ) -> tuple[int, int]:
    n = cfg.group_size
    b = cfg.bootstrap_b
    quantiles = (cfg.alpha / 2.0, 1.0 - cfg.alpha / 2.0)
    rejected = np.zeros(cfg.trials, dtype=bool)

    def work(start: int, stop: int) -> None:
        for i in range(start, stop):
            rng = substream(cfg.rng_seed, i)
            first, second = draw_groups(rng)
            idx_1 = rng.integers(0, n, size=(b, n))
            idx_2 = rng.integers(0, n, size=(b, n))
            diffs = first[idx_1].mean(axis=1) - second[idx_2].mean(axis=1)
            lo, hi = np.quantile(diffs, quantiles, method="linear")
            rejected[i] = not (lo <= 0.0 <= hi)

    _run_indexed(cfg.trials, jobs, work)
    return int(rejected.sum()), 0


def _report(study: str, counted: int, degenerate: int,
            cfg: CalibrationConfig) -> CalibrationReport:
    lo, hi = wilson_interval(counted, cfg.trials)
    return CalibrationReport(
        study=study,
        rejection_rate=counted / cfg.trials,
        trials=cfg.trials,
        wilson_lo=lo,
        wilson_hi=hi,
        degenerate_trials=degenerate,
        config=cfg,
    )


def empirical_type1_from_pool(pool: PerformanceSample, cfg: CalibrationConfig,
                              jobs: int = 1) -> CalibrationReport:
    """False-positive rate of the configured test on one algorithm's data.

    Each trial draws ``2 * group_size`` measurements from the pool without
    replacement, splits them into two fictive groups, and runs the two-tail
    test.  Any rejection is a false positive, because both groups came from
    the same algorithm.

    Raises
    ------
    InsufficientDataError
        If the pool holds fewer than ``2 * group_size`` measurements.
    """
    values = np.asarray(pool.values, dtype=np.float64)
    needed = 2 * cfg.group_size
    if len(values) < needed:
        raise InsufficientDataError(
            f"pool {pool.label!r} has {len(values)} measurements; "
            f"{needed} are needed for two groups of {cfg.group_size}"
        )
    n = cfg.group_size
    pool_size = len(values)

    def draw_groups(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        idx = rng.choice(pool_size, size=needed, replace=False)
        return values[idx[:n]], values[idx[n:]]

    if cfg.test == "bootstrap":
        counted, degenerate = _run_bootstrap_study(cfg, jobs, draw_groups)
    else:
        counted, degenerate = _run_welch_study(cfg, jobs, Tail.TWO, draw_groups)
    return _report("type1-pool", counted, degenerate, cfg)


def empirical_type1_synthetic(dist: SyntheticDistribution, cfg: CalibrationConfig,
                              jobs: int = 1) -> CalibrationReport:
    """False-positive rate when both groups come from the same population."""

    def draw_groups(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        return dist.draw(rng, cfg.group_size), dist.draw(rng, cfg.group_size)

    if cfg.test == "bootstrap":
        counted, degenerate = _run_bootstrap_study(cfg, jobs, draw_groups)
    else:
        counted, degenerate = _run_welch_study(cfg, jobs, Tail.TWO, draw_groups)
    return _report(f"type1-synthetic[{dist.describe()}]", counted, degenerate, cfg)


def empirical_type2_synthetic(dist_a: SyntheticDistribution,
                              dist_b: SyntheticDistribution,
                              cfg: CalibrationConfig,
                              jobs: int = 1) -> CalibrationReport:
    """Miss rate of the one-tail test when a real difference exists.

    Groups are drawn from ``dist_a`` and ``dist_b``; the alternative tested
    is that ``dist_b``'s mean exceeds ``dist_a``'s.  The reported rate is
    the fraction of trials on which the test failed to reject, the
    empirical estimate of beta, directly comparable to the analytic curve.
    Only the unequal-variance test is supported here; the bootstrap has no
    analytic power model to compare against.
    """
    if cfg.test != "welch":
        raise DomainError("type-2 calibration runs the welch test only")

    def draw_groups(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        # Drawn a then b; the decision orients b minus a.
        a = dist_a.draw(rng, cfg.group_size)
        b = dist_b.draw(rng, cfg.group_size)
        return b, a

    rejections, degenerate = _run_welch_study(cfg, jobs, Tail.ONE_POSITIVE, draw_groups)
    failures = cfg.trials - rejections
    return _report(
        f"type2-synthetic[{dist_a.describe()} vs {dist_b.describe()}]",
        failures, degenerate, cfg,
    )


def empirical_fwer(n_experiments: int, cfg: CalibrationConfig,
                   jobs: int = 1) -> CalibrationReport:
    """Familywise false-positive rate across repeated independent tests.

    Each trial runs ``n_experiments`` independent two-tail tests on
    standard-normal null data at level ``cfg.alpha`` (pass the corrected
    per-comparison level to check a correction) and counts the trial if any
    of them rejects.
    """
    if not isinstance(n_experiments, int) or isinstance(n_experiments, bool) \
            or n_experiments < 1:
        raise DomainError(f"n_experiments must be a positive integer, got {n_experiments!r}")
    n = cfg.group_size
    shape = (cfg.trials, n_experiments)
    mean_1 = np.empty(shape)
    var_1 = np.empty(shape)
    mean_2 = np.empty(shape)
    var_2 = np.empty(shape)

    def work(start: int, stop: int) -> None:
        for i in range(start, stop):
            rng = substream(cfg.rng_seed, i)
            draws = rng.normal(0.0, 1.0, size=(n_experiments, 2, n))
            mean_1[i] = draws[:, 0, :].mean(axis=1)
            var_1[i] = draws[:, 0, :].var(axis=1, ddof=1)
            mean_2[i] = draws[:, 1, :].mean(axis=1)
            var_2[i] = draws[:, 1, :].var(axis=1, ddof=1)

    _run_indexed(cfg.trials, jobs, work)
    reject, degenerate = _welch_decisions(
        mean_1.ravel(), var_1.ravel(), mean_2.ravel(), var_2.ravel(),
        n, cfg.alpha, Tail.TWO,
    )
    any_rejection = reject.reshape(shape).any(axis=1)
    return _report(
        f"fwer[n_experiments={n_experiments}]",
        int(any_rejection.sum()),
        int(degenerate.sum()),
        cfg,
    )


def std_estimation_study(n_values: Iterable[int], draws: int,
                         rng_seed: int = 0) -> tuple[StdStudyRow, ...]:
    """Sampling distribution of the unbiased std estimator under normality.

    For each group size ``n``, draws ``draws`` samples of size ``n`` from
    the standard normal and reports the mean and spread of the resulting
    std estimates.  The mean falls visibly short of the true sigma at small
    ``n``, which is why plans built on small pilots need a safety margin.

    Row ``j`` of the output consumes stream ``(rng_seed, j)``; draws are
    internally chunked for memory, which does not change the stream.
    """
    ns = sorted(set(int(n) for n in n_values))
    if not ns:
        raise DomainError("std_estimation_study needs at least one group size")
    for n in ns:
        if n < 2:
            raise DomainError(f"group sizes must be >= 2, got {n}")
    if not isinstance(draws, int) or isinstance(draws, bool) or draws < 1:
        raise DomainError(f"draws must be a positive integer, got {draws!r}")

    rows = []
    for row_index, n in enumerate(ns):
        rng = substream(rng_seed, row_index)
        parts = []
        remaining = draws
        block = max(1, _STD_STUDY_BLOCK // n)
        while remaining > 0:
            take = min(block, remaining)
            sample_block = rng.normal(0.0, 1.0, size=(take, n))
            parts.append(sample_block.std(axis=1, ddof=1))
            remaining -= take
        s = np.concatenate(parts) if len(parts) > 1 else parts[0]
        rows.append(StdStudyRow(n=n, mean_s=float(s.mean()), std_s=float(s.std())))
    return tuple(rows)
