"""Optional figure rendering for the report path.

Every figure duplicates a delimited output exactly; the CSV stays the
canonical artifact and the PNG is a convenience.  Rendering is lazy so that
text-only runs never import matplotlib.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .empirical_error import StdStudyRow
from .power_analysis import PowerCurve


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def render_power_curve(curve: PowerCurve, path: str,
                       beta_target: float | None = None) -> None:
    """Type-II error against group size, one line per effect size."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_effect: dict[float, list[tuple[int, float]]] = {}
    for point in curve.entries:
        by_effect.setdefault(point.effect_size, []).append((point.n, point.beta))
    for effect, points in sorted(by_effect.items()):
        points.sort()
        ax.plot([n for n, _ in points], [beta for _, beta in points],
                label=f"effect {effect:g}")
    if beta_target is not None:
        ax.axhline(beta_target, linestyle="--", linewidth=1, color="gray",
                   label=f"target {beta_target:g}")
    ax.set_xlabel("seeds per group")
    ax.set_ylabel("type-II error")
    ax.grid(True, alpha=0.3)
    if len(by_effect) <= 12:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_calibration_rates(rows: Iterable[tuple[int, str, float, float, float]],
                             path: str, nominal: float | None = None,
                             rate_label: str = "rejection rate") -> None:
    """Empirical rates with Wilson bars, one series per test."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_test: dict[str, list[tuple[int, float, float, float]]] = {}
    for n, test, rate, lo, hi in rows:
        by_test.setdefault(test, []).append((n, rate, lo, hi))
    for test, points in sorted(by_test.items()):
        points.sort()
        ns = [n for n, _, _, _ in points]
        rates = [rate for _, rate, _, _ in points]
        err_lo = [rate - lo for _, rate, lo, _ in points]
        err_hi = [hi - rate for _, rate, _, hi in points]
        ax.errorbar(ns, rates, yerr=[err_lo, err_hi], marker="o",
                    capsize=3, label=test)
    if nominal is not None:
        ax.axhline(nominal, linestyle="--", linewidth=1, color="gray",
                   label=f"nominal {nominal:g}")
    ax.set_xlabel("seeds per group")
    ax.set_ylabel(rate_label)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_std_study(rows: Sequence[StdStudyRow], path: str) -> None:
    """Mean of the std estimator with a one-spread band, against group size."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ns = [row.n for row in rows]
    means = [row.mean_s for row in rows]
    lows = [row.mean_s - row.std_s for row in rows]
    highs = [row.mean_s + row.std_s for row in rows]
    ax.plot(ns, means, marker="o", label="mean of s")
    ax.fill_between(ns, lows, highs, alpha=0.2, label="one spread of s")
    ax.axhline(1.0, linestyle="--", linewidth=1, color="gray", label="true sigma")
    ax.set_xlabel("sample size n")
    ax.set_ylabel("std estimate")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
