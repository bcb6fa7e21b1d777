"""Analytic type-II error and sample-size planning.

Given pilot estimates of the two group spreads, the probability of missing a
true mean difference of ``effect_size`` with ``n`` seeds per group is
approximated by shifting the null t distribution:

    beta(n) = F_nu( t_alpha - effect_size / SE(n) )

where ``SE(n) = sqrt(s1^2/n + s2^2/n)``, ``nu`` is the Welch-Satterthwaite
degrees of freedom at group size ``n``, ``t_alpha`` is the upper one-tail
critical value at level alpha, and ``F_nu`` is the central t CDF.  The
convention is one-tail throughout: the planned experiment asks whether one
algorithm beats the other, not whether they merely differ.

``required_sample_size`` inverts the curve: the smallest ``n`` whose beta
meets the target.  ``safety_margin`` then pads that ``n``, because pilot
spreads are underestimates more often than not and a plan sized exactly at
the target has no reserve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

from .distributions import t_cdf, t_quantile
from .errors import DomainError, UnattainableTargetError

__all__ = [
    "PowerQuery",
    "PowerPoint",
    "PowerCurve",
    "beta_error",
    "power_curve",
    "required_sample_size",
    "safety_margin",
]

DEFAULT_SAFETY_FACTOR = 1.5


@dataclass(frozen=True)
class PowerQuery:
    """Inputs of a power question: spreads, significance level, effect size."""

    s1: float
    s2: float
    effect_size: float
    alpha: float = 0.05

    def __post_init__(self) -> None:
        for name, value in (("s1", self.s1), ("s2", self.s2)):
            if not math.isfinite(value) or value < 0.0:
                raise DomainError(f"{name} must be finite and >= 0, got {value!r}")
        if self.s1 == 0.0 and self.s2 == 0.0:
            raise DomainError("at least one group spread must be positive")
        if not math.isfinite(self.effect_size) or self.effect_size <= 0.0:
            raise DomainError(f"effect_size must be positive, got {self.effect_size!r}")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie strictly inside (0, 1), got {self.alpha!r}")


@dataclass(frozen=True)
class PowerPoint:
    """One evaluated grid cell of a power curve."""

    n: int
    effect_size: float
    beta: float


@dataclass(frozen=True)
class PowerCurve:
    """Grid of type-II error values, sorted by (effect_size, n)."""

    entries: tuple[PowerPoint, ...]

    def rows(self) -> list[tuple[float, int, float]]:
        """Plot-ready (effect_size, n, beta) rows in stored order."""
        return [(point.effect_size, point.n, point.beta) for point in self.entries]


def _check_n(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise DomainError(f"group size must be an integer >= 2, got {n!r}")
    return n


def beta_error(query: PowerQuery, n: int) -> float:
    """Probability of failing to detect the queried effect with n seeds per group.

    Degrees of freedom are recomputed at each candidate ``n`` from the pilot
    spreads; holding them fixed would distort the small-n end of the curve,
    which is exactly the region planning decisions live in.
    """
    n = _check_n(n)
    var1 = query.s1 * query.s1 / n
    var2 = query.s2 * query.s2 / n
    se_squared = var1 + var2
    se = math.sqrt(se_squared)
    nu = se_squared * se_squared / (
        var1 * var1 / (n - 1) + var2 * var2 / (n - 1)
    )
    t_alpha = t_quantile(1.0 - query.alpha, nu)
    t_effect = query.effect_size / se
    return t_cdf(t_alpha - t_effect, nu)


def power_curve(query: PowerQuery, n_values: Iterable[int],
                effect_sizes: Iterable[float] | None = None) -> PowerCurve:
    """Evaluate beta over the Cartesian grid of group sizes and effect sizes.

    ``effect_sizes`` defaults to the query's own effect size.  Rows come out
    sorted by (effect_size, n) regardless of input order.
    """
    ns = sorted({_check_n(n) for n in n_values})
    if not ns:
        raise DomainError("power_curve needs at least one group size")
    if effect_sizes is None:
        epsilons = [query.effect_size]
    else:
        epsilons = sorted(set(float(e) for e in effect_sizes))
        if not epsilons:
            raise DomainError("power_curve needs at least one effect size")
    entries = []
    for effect in epsilons:
        per_effect = replace(query, effect_size=effect)
        for n in ns:
            entries.append(PowerPoint(n=n, effect_size=effect,
                                      beta=beta_error(per_effect, n)))
    return PowerCurve(entries=tuple(entries))


def required_sample_size(query: PowerQuery, beta_target: float, n_max: int) -> int:
    """Smallest group size in [2, n_max] whose type-II error meets the target.

    Raises
    ------
    UnattainableTargetError
        If even ``n_max`` seeds per group leave beta above the target; the
        error carries ``beta_at_n_max`` so the caller can report how far off
        the plan is.
    """
    if not 0.0 < beta_target < 1.0:
        raise DomainError(f"beta_target must lie strictly inside (0, 1), got {beta_target!r}")
    _check_n(n_max)
    beta = 1.0
    for n in range(2, n_max + 1):
        beta = beta_error(query, n)
        if beta <= beta_target:
            return n
    raise UnattainableTargetError(
        f"no group size up to {n_max} reaches beta <= {beta_target:g}; "
        f"beta({n_max}) = {beta:.4f}",
        n_max=n_max,
        beta_at_n_max=beta,
    )


def safety_margin(n: int, factor: float = DEFAULT_SAFETY_FACTOR) -> int:
    """Padded group size: ceil(n * factor).

    Pilot spreads are noisy and biased low, so running exactly the computed
    ``n`` under-delivers power in practice.  The tiny slack inside the ceil
    keeps factors that are exact ratios (say 17/7) from rounding one past
    their intended product.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if not math.isfinite(factor) or factor < 1.0:
        raise DomainError(f"safety factor must be >= 1, got {factor!r}")
    return math.ceil(n * factor - 1e-9)
