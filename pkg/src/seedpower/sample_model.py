"""Data model and ingestion for per-seed performance measurements.

A run of a stochastic algorithm under one random seed yields a learning
curve; a curve is reduced to one scalar (the mean of its last ``k`` points by
default); the scalars for all seeds of one algorithm form a
:class:`PerformanceSample`; and a sample is summarized by its size, mean, and
unbiased standard deviation.  Test modules consume either the raw samples or
the summaries.

Three input formats are accepted:

* curves CSV with header ``label,seed,step,value``, one row per recorded
  point of one seed's curve;
* scores CSV with header ``label,seed,score``, one row per seed when the
  per-seed scalar has already been computed;
* summary JSON ``{"groups": [{"label", "n", "mean", "std"}, ...]}`` when only
  the summary statistics are available.

All parsing is strict: malformed rows, duplicate keys, and non-finite values
raise :class:`~seedpower.errors.SampleParseError` carrying the offending line
number.
"""

from __future__ import annotations

import json
import math
import warnings
from csv import reader as csv_reader
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Union

import numpy as np

from .errors import DomainError, InsufficientDataError, SampleParseError

__all__ = [
    "LearningCurve",
    "PerformanceSample",
    "SummaryStats",
    "DifferenceStats",
    "final_performance",
    "summarize",
    "difference_stats",
    "load_samples",
]

DEFAULT_METRIC_LAST_K = 10

_CURVES_HEADER = ("label", "seed", "step", "value")
_SCORES_HEADER = ("label", "seed", "score")


@dataclass(frozen=True)
class LearningCurve:
    """One seed's recorded performance trajectory.

    ``points`` holds (step, value) pairs with strictly increasing steps.
    """

    seed_id: str
    points: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        if not self.seed_id:
            raise DomainError("learning curve requires a non-empty seed id")
        if len(self.points) < 1:
            raise DomainError(f"curve {self.seed_id!r} has no points")
        previous_step = -1
        for step, value in self.points:
            if step < 0 or step <= previous_step:
                raise DomainError(
                    f"curve {self.seed_id!r}: steps must be nonnegative and "
                    f"strictly increasing (saw {step} after {previous_step})"
                )
            if not math.isfinite(value):
                raise DomainError(
                    f"curve {self.seed_id!r}: non-finite value {value!r} at step {step}"
                )
            previous_step = step

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(value for _, value in self.points)


@dataclass(frozen=True)
class PerformanceSample:
    """Per-seed scalar performances of one algorithm."""

    label: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.label:
            raise DomainError("performance sample requires a non-empty label")
        if len(self.values) < 1:
            raise DomainError(f"sample {self.label!r} is empty")
        for value in self.values:
            if not math.isfinite(value):
                raise DomainError(f"sample {self.label!r}: non-finite value {value!r}")

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SummaryStats:
    """Size, mean, and unbiased standard deviation of one sample."""

    n: int
    mean: float
    std: float
    label: str = ""

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"summary requires n >= 1, got {self.n}")
        if not math.isfinite(self.mean):
            raise DomainError(f"summary mean must be finite, got {self.mean!r}")
        if not math.isfinite(self.std) or self.std < 0.0:
            raise DomainError(f"summary std must be finite and >= 0, got {self.std!r}")


@dataclass(frozen=True)
class DifferenceStats:
    """Statistics of the difference between two groups, first minus second."""

    mean_diff: float
    std_diff: float
    group_a: SummaryStats
    group_b: SummaryStats


def final_performance(curve: LearningCurve, k: int = DEFAULT_METRIC_LAST_K,
                      lenient: bool = False) -> float:
    """Scalar performance of one curve: mean of its last ``k`` values.

    Parameters
    ----------
    curve:
        The recorded trajectory.
    k:
        Number of trailing points to average.
    lenient:
        With fewer than ``k`` points, a strict call raises
        :class:`InsufficientDataError`; a lenient call averages every point
        the curve has and emits a ``UserWarning`` instead.
    """
    if k < 1:
        raise DomainError(f"metric window must be >= 1, got {k}")
    values = curve.values
    if len(values) < k:
        if not lenient:
            raise InsufficientDataError(
                f"curve {curve.seed_id!r} has {len(values)} points, "
                f"fewer than the metric window k={k}"
            )
        warnings.warn(
            f"curve {curve.seed_id!r}: only {len(values)} points for k={k}; "
            "averaging the whole curve",
            UserWarning,
            stacklevel=2,
        )
        return float(np.mean(values))
    return float(np.mean(values[-k:]))


def summarize(sample: PerformanceSample) -> SummaryStats:
    """Mean and unbiased standard deviation of a sample.

    The std uses the N-1 denominator.  At least two values are required; a
    standard deviation of a single observation is undefined.
    """
    if sample.n < 2:
        raise InsufficientDataError(
            f"sample {sample.label!r} has n={sample.n}; "
            "at least 2 values are needed for an unbiased std"
        )
    values = np.asarray(sample.values, dtype=np.float64)
    return SummaryStats(
        n=sample.n,
        mean=float(values.mean()),
        std=float(values.std(ddof=1)),
        label=sample.label,
    )


def difference_stats(a: SummaryStats, b: SummaryStats) -> DifferenceStats:
    """Difference statistics for two summarized groups, ``a`` minus ``b``.

    The spread of the difference combines the two group spreads in
    quadrature: ``std_diff = sqrt(a.std**2 + b.std**2)``.
    """
    return DifferenceStats(
        mean_diff=a.mean - b.mean,
        std_diff=math.hypot(a.std, b.std),
        group_a=a,
        group_b=b,
    )


Source = Union[str, Path, IO[str]]


def load_samples(source: Source, fmt: str | None = None, *,
                 metric_last_k: int = DEFAULT_METRIC_LAST_K,
                 lenient: bool = False) -> list[PerformanceSample] | list[SummaryStats]:
    """Load performance data from a file or stream.

    Parameters
    ----------
    source:
        Path or open text stream.
    fmt:
        ``"curves-csv"``, ``"scores-csv"``, or ``"summary-json"``.  When
        omitted, the format is inferred from the file extension and header.
    metric_last_k:
        Metric window for the curves format; ignored by the others.
    lenient:
        Passed through to :func:`final_performance` for short curves.

    Returns
    -------
    list
        One :class:`PerformanceSample` per label for the CSV formats, in
        first-appearance order, values ordered by seed id; one
        :class:`SummaryStats` per label for the summary format.
    """
    if hasattr(source, "read"):
        name = getattr(source, "name", "<stream>")
        text = source.read()
    else:
        path = Path(source)
        name = str(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise SampleParseError(f"cannot read input: {exc}", source=name) from exc

    if fmt is None:
        fmt = _infer_format(name, text)
    if fmt == "summary-json":
        return _parse_summary_json(text, name)
    if fmt == "curves-csv":
        return _parse_curves_csv(text, name, metric_last_k, lenient)
    if fmt == "scores-csv":
        return _parse_scores_csv(text, name)
    raise DomainError(
        f"unknown input format {fmt!r}; "
        "expected curves-csv, scores-csv, or summary-json"
    )


def _infer_format(name: str, text: str) -> str:
    stripped = text.lstrip()
    if name.lower().endswith(".json") or stripped.startswith("{"):
        return "summary-json"
    first_line = stripped.splitlines()[0] if stripped else ""
    header = tuple(cell.strip().lower() for cell in first_line.split(","))
    if header == _CURVES_HEADER:
        return "curves-csv"
    if header == _SCORES_HEADER:
        return "scores-csv"
    raise SampleParseError(
        "cannot infer format: expected a JSON object or a CSV header "
        f"{','.join(_CURVES_HEADER)} or {','.join(_SCORES_HEADER)}",
        source=name, line=1,
    )


def _iter_csv_rows(text: str, name: str,
                   header: tuple[str, ...]) -> Iterable[tuple[int, list[str]]]:
    rows = csv_reader(text.splitlines())
    try:
        first = next(rows)
    except StopIteration:
        raise SampleParseError("no records", source=name) from None
    seen = tuple(cell.strip().lower() for cell in first)
    if seen != header:
        raise SampleParseError(
            f"expected header {','.join(header)}, got {','.join(seen)}",
            source=name, line=1,
        )
    line = 1
    for row in rows:
        line += 1
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise SampleParseError(
                f"expected {len(header)} fields, got {len(row)}",
                source=name, line=line,
            )
        yield line, [cell.strip() for cell in row]


def _parse_float(cell: str, what: str, name: str, line: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise SampleParseError(f"bad {what} {cell!r}", source=name, line=line) from None
    if not math.isfinite(value):
        raise SampleParseError(f"non-finite {what} {cell!r}", source=name, line=line)
    return value


def _parse_curves_csv(text: str, name: str, metric_last_k: int,
                      lenient: bool) -> list[PerformanceSample]:
    curves: dict[tuple[str, str], dict[int, float]] = {}
    label_order: list[str] = []
    for line, (label, seed, step_cell, value_cell) in _iter_csv_rows(text, name, _CURVES_HEADER):
        if not label or not seed:
            raise SampleParseError("empty label or seed", source=name, line=line)
        try:
            step = int(step_cell)
        except ValueError:
            raise SampleParseError(f"bad step {step_cell!r}", source=name, line=line) from None
        if step < 0:
            raise SampleParseError(f"negative step {step}", source=name, line=line)
        value = _parse_float(value_cell, "value", name, line)
        key = (label, seed)
        points = curves.setdefault(key, {})
        if step in points:
            raise SampleParseError(
                f"duplicate point for label {label!r}, seed {seed!r}, step {step}",
                source=name, line=line,
            )
        if label not in label_order:
            label_order.append(label)
        points[step] = value
    if not curves:
        raise SampleParseError("no records", source=name)

    samples = []
    for label in label_order:
        seeds = sorted(seed for lbl, seed in curves if lbl == label)
        values = []
        for seed in seeds:
            points = curves[(label, seed)]
            curve = LearningCurve(
                seed_id=seed,
                points=tuple(sorted(points.items())),
            )
            try:
                values.append(final_performance(curve, metric_last_k, lenient))
            except InsufficientDataError as exc:
                raise InsufficientDataError(f"{name}: label {label!r}: {exc}") from None
        samples.append(PerformanceSample(label=label, values=tuple(values)))
    return samples


def _parse_scores_csv(text: str, name: str) -> list[PerformanceSample]:
    scores: dict[str, dict[str, float]] = {}
    label_order: list[str] = []
    for line, (label, seed, score_cell) in _iter_csv_rows(text, name, _SCORES_HEADER):
        if not label or not seed:
            raise SampleParseError("empty label or seed", source=name, line=line)
        score = _parse_float(score_cell, "score", name, line)
        per_label = scores.setdefault(label, {})
        if seed in per_label:
            raise SampleParseError(
                f"duplicate score for label {label!r}, seed {seed!r}",
                source=name, line=line,
            )
        if label not in label_order:
            label_order.append(label)
        per_label[seed] = score
    if not scores:
        raise SampleParseError("no records", source=name)
    return [
        PerformanceSample(
            label=label,
            values=tuple(scores[label][seed] for seed in sorted(scores[label])),
        )
        for label in label_order
    ]


def _parse_summary_json(text: str, name: str) -> list[SummaryStats]:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SampleParseError(f"invalid JSON: {exc.msg}", source=name, line=exc.lineno) from None
    if not isinstance(document, dict) or "groups" not in document:
        raise SampleParseError('expected an object with a "groups" array', source=name)
    groups = document["groups"]
    if not isinstance(groups, list) or not groups:
        raise SampleParseError("no records", source=name)

    summaries: list[SummaryStats] = []
    seen: set[str] = set()
    for position, group in enumerate(groups):
        where = f'groups[{position}]'
        if not isinstance(group, dict):
            raise SampleParseError(f"{where} is not an object", source=name)
        missing = {"label", "n", "mean", "std"} - set(group)
        if missing:
            raise SampleParseError(
                f"{where} is missing {', '.join(sorted(missing))}", source=name
            )
        label = group["label"]
        if not isinstance(label, str) or not label:
            raise SampleParseError(f"{where} has an invalid label", source=name)
        if label in seen:
            raise SampleParseError(f"duplicate label {label!r}", source=name)
        seen.add(label)
        n = group["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise SampleParseError(f"{where}: n must be a positive integer", source=name)
        try:
            mean = float(group["mean"])
            std = float(group["std"])
        except (TypeError, ValueError):
            raise SampleParseError(f"{where}: mean and std must be numbers", source=name) from None
        if not math.isfinite(mean) or not math.isfinite(std) or std < 0.0:
            raise SampleParseError(
                f"{where}: mean must be finite and std finite and >= 0", source=name
            )
        summaries.append(SummaryStats(n=n, mean=mean, std=std, label=label))
    return summaries
