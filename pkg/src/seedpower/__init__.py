"""Statistical comparison of stochastic algorithms across random seeds.

The library answers three questions about two algorithms whose scores vary
from seed to seed: do they actually differ (Welch's t-test and a percentile
bootstrap on the difference of means), how many seeds does that verdict
need to control both error probabilities (analytic power analysis), and how
far do the tests' real error rates sit from their nominal levels at small
sample sizes (Monte Carlo calibration).
"""

from .bootstrap_test import (
    DEFAULT_B_SAMPLES,
    BootstrapConfig,
    BootstrapResult,
    bootstrap_diff_ci,
    resample,
)
from .distributions import (
    log_gamma,
    regularized_incomplete_beta,
    t_cdf,
    t_cdf_batch,
    t_pdf,
    t_quantile,
)
from .empirical_error import (
    CalibrationConfig,
    CalibrationReport,
    StdStudyRow,
    SyntheticDistribution,
    empirical_fwer,
    empirical_type1_from_pool,
    empirical_type1_synthetic,
    empirical_type2_synthetic,
    std_estimation_study,
    wilson_interval,
)
from .errors import (
    DegenerateSampleError,
    DomainError,
    InsufficientDataError,
    NumericalError,
    SampleParseError,
    SeedPowerError,
    UnattainableTargetError,
)
from .power_analysis import (
    DEFAULT_SAFETY_FACTOR,
    PowerCurve,
    PowerPoint,
    PowerQuery,
    beta_error,
    power_curve,
    required_sample_size,
    safety_margin,
)
from .rng import GENERATOR_ID, substream
from .sample_model import (
    DEFAULT_METRIC_LAST_K,
    DifferenceStats,
    LearningCurve,
    PerformanceSample,
    SummaryStats,
    difference_stats,
    final_performance,
    load_samples,
    summarize,
)
from .welch_test import (
    Tail,
    TestConfig,
    WelchResult,
    bonferroni,
    confidence_intervals,
    p_value,
    pooled_statistic,
    run_welch,
    welch_statistic,
)

__version__ = "0.1.0"

__all__ = [
    "BootstrapConfig",
    "BootstrapResult",
    "CalibrationConfig",
    "CalibrationReport",
    "DEFAULT_B_SAMPLES",
    "DEFAULT_METRIC_LAST_K",
    "DEFAULT_SAFETY_FACTOR",
    "DegenerateSampleError",
    "DifferenceStats",
    "DomainError",
    "GENERATOR_ID",
    "InsufficientDataError",
    "LearningCurve",
    "NumericalError",
    "PerformanceSample",
    "PowerCurve",
    "PowerPoint",
    "PowerQuery",
    "SampleParseError",
    "SeedPowerError",
    "StdStudyRow",
    "SummaryStats",
    "SyntheticDistribution",
    "Tail",
    "TestConfig",
    "UnattainableTargetError",
    "WelchResult",
    "beta_error",
    "bonferroni",
    "bootstrap_diff_ci",
    "confidence_intervals",
    "difference_stats",
    "empirical_fwer",
    "empirical_type1_from_pool",
    "empirical_type1_synthetic",
    "empirical_type2_synthetic",
    "final_performance",
    "load_samples",
    "log_gamma",
    "p_value",
    "pooled_statistic",
    "power_curve",
    "regularized_incomplete_beta",
    "required_sample_size",
    "resample",
    "run_welch",
    "safety_margin",
    "std_estimation_study",
    "substream",
    "summarize",
    "t_cdf",
    "t_cdf_batch",
    "t_pdf",
    "t_quantile",
    "welch_statistic",
    "wilson_interval",
]
