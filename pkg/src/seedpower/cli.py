"""Command-line front end.

Four subcommands mirror the workflow the library supports:

* ``compare``  - run the significance tests on recorded per-seed data;
* ``plan``     - compute how many seeds bound both error probabilities;
* ``curve``    - tabulate the type-II error over a (group size, effect) grid;
* ``calibrate``- measure the tests' real error rates by simulation.

Every run resolves its configuration as flags > config file > defaults,
echoes the resolved values in an embedded manifest together with input
digests and the RNG identity, and serializes reports with sorted keys and
no timestamps, so equal manifests produce byte-identical reports at any
``--jobs`` level.

Exit codes: 0 success, 2 usage, 3 data or schema problems, 4 numerical or
degenerate-sample failures, 5 unattainable plan target.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

from . import __version__
from .bootstrap_test import BootstrapConfig, bootstrap_diff_ci
from .empirical_error import (
    CalibrationConfig,
    CalibrationReport,
    SyntheticDistribution,
    empirical_type1_from_pool,
    empirical_type1_synthetic,
    empirical_type2_synthetic,
    std_estimation_study,
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
    PowerQuery,
    beta_error,
    power_curve,
    required_sample_size,
    safety_margin,
)
from .rng import GENERATOR_ID
from .sample_model import PerformanceSample, SummaryStats, load_samples, summarize
from .welch_test import Tail, TestConfig, run_welch

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4
EXIT_UNATTAINABLE = 5

_TAIL_BY_FLAG = {"one": Tail.ONE_POSITIVE, "two": Tail.TWO}

# Keys a config file may set, with their casts.  Paths and output targets
# stay on the command line on purpose.
_CONFIG_CASTS = {
    "alpha": float,
    "tail": str,
    "test": str,
    "metric_last_k": int,
    "bootstrap_b": int,
    "seed": int,
    "effect_size": str,
    "beta_target": float,
    "n_max": int,
    "n_min": int,
    "safety_factor": float,
    "trials": int,
    "format": str,
    "jobs": int,
    "s1": float,
    "s2": float,
    "group_sizes": str,
    "draws": int,
    "input_format": str,
}


def _load_config_file(path: str) -> dict[str, object]:
    values: dict[str, object] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key not in _CONFIG_CASTS:
            raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            values[key] = _CONFIG_CASTS[key](value)
        except ValueError:
            raise DomainError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return values


class _Resolver:
    """flags > config file > defaults, with every resolved value recorded."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self.config = _load_config_file(args.config) if getattr(args, "config", None) else {}
        self.resolved: dict[str, object] = {}

    def get(self, name: str, default):
        value = getattr(self.args, name, None)
        if value is None:
            value = self.config.get(name, default)
        self.resolved[name] = value
        return value


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(65536), b""):
            digest.update(block)
    return "sha256:" + digest.hexdigest()


def _manifest(command: str, resolver: _Resolver, inputs: list[str]) -> dict:
    digests = {}
    for path in inputs:
        try:
            digests[path] = _sha256(path)
        except OSError as exc:
            raise SampleParseError(f"cannot read input: {exc}", source=path) from exc
    config = {key: value for key, value in sorted(resolver.resolved.items())
              if key not in ("jobs",)}
    return {
        "command": command,
        "config": config,
        "generator_id": GENERATOR_ID,
        "inputs": digests,
        "version": __version__,
    }


def _num(value: float):
    # JSON has no infinities; open interval sides serialize as null.
    if value is None or math.isinf(value):
        return None
    return value


def _json_text(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _csv_text(header: list[str], rows: list[list[object]]) -> str:
    def cell(value: object) -> str:
        if isinstance(value, float):
            return repr(value)
        return str(value)

    lines = [",".join(header)]
    lines.extend(",".join(cell(value) for value in row) for row in rows)
    return "\n".join(lines) + "\n"


def _write_output(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _announce(out: str, lines: list[str]) -> None:
    # The human-readable table goes to stdout only when stdout is not
    # already carrying the report itself.
    if out != "-":
        for line in lines:
            print(line)
        print(f"report written to {out}")


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _parse_positive_int_list(text: str, what: str) -> list[int]:
    try:
        values = sorted({int(part) for part in text.split(",") if part.strip()})
    except ValueError:
        raise DomainError(f"bad {what} list: {text!r}") from None
    if not values:
        raise DomainError(f"empty {what} list")
    return values


def _parse_effect_sizes(text: str) -> list[float]:
    try:
        values = [float(part) for part in str(text).split(",") if part.strip()]
    except ValueError:
        raise DomainError(f"bad effect size list: {text!r}") from None
    if not values:
        raise DomainError("no effect sizes given")
    return values


def _parse_dist(spec: str) -> SyntheticDistribution:
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise DomainError(
            f"bad distribution {spec!r}; expected kind:params, for example "
            "normal:0,1 or bimodal:3000,5000,400,0.5 or lognormal:0,1"
        )
    try:
        params = [float(part) for part in rest.split(",")]
    except ValueError:
        raise DomainError(f"bad distribution parameters in {spec!r}") from None
    if kind == "normal" and len(params) == 2:
        return SyntheticDistribution.normal(*params)
    if kind == "lognormal" and len(params) == 2:
        return SyntheticDistribution.lognormal(*params)
    if kind == "bimodal" and len(params) in (3, 4):
        return SyntheticDistribution.bimodal(*params)
    raise DomainError(
        f"bad distribution {spec!r}; expected normal:mu,sigma or "
        "lognormal:mu,sigma or bimodal:mu1,mu2,sigma[,weight]"
    )


def _load_groups(paths: list[str], fmt: str | None, metric_last_k: int,
                 lenient: bool) -> list[PerformanceSample | SummaryStats]:
    groups: list[PerformanceSample | SummaryStats] = []
    labels: set[str] = set()
    for path in paths:
        for group in load_samples(path, fmt, metric_last_k=metric_last_k, lenient=lenient):
            if group.label in labels:
                raise SampleParseError(f"duplicate label {group.label!r} across inputs",
                                       source=path)
            labels.add(group.label)
            groups.append(group)
    return groups


def _group_summary(group: PerformanceSample | SummaryStats) -> SummaryStats:
    if isinstance(group, PerformanceSample):
        return summarize(group)
    return group


# ---------------------------------------------------------------- compare


def _cmd_compare(args: argparse.Namespace) -> int:
    resolver = _Resolver(args)
    alpha = resolver.get("alpha", 0.05)
    tail_flag = resolver.get("tail", "two")
    test = resolver.get("test", "welch")
    metric_last_k = resolver.get("metric_last_k", 10)
    bootstrap_b = resolver.get("bootstrap_b", 10000)
    seed = resolver.get("seed", 0)
    fmt = resolver.get("format", "json")
    input_format = resolver.get("input_format", None)
    jobs = args.jobs or 1
    out = args.out

    if tail_flag not in _TAIL_BY_FLAG:
        raise DomainError(f"tail must be 'one' or 'two', got {tail_flag!r}")
    tail = _TAIL_BY_FLAG[tail_flag]

    groups = _load_groups(args.inputs, input_format, metric_last_k, args.lenient_metric)
    if len(groups) != 2:
        raise SampleParseError(
            f"compare needs exactly two labels, found {len(groups)}: "
            + ", ".join(repr(g.label) for g in groups)
        )
    group_a, group_b = groups
    orientation = f"{group_a.label} minus {group_b.label}"
    summary_a = _group_summary(group_a)
    summary_b = _group_summary(group_b)

    tests = ["welch", "bootstrap"] if test == "both" else [test]
    results: dict[str, dict] = {}
    table = [f"comparison: {orientation}"]
    for summary in (summary_a, summary_b):
        table.append(f"  {summary.label}: n={summary.n} mean={_fmt(summary.mean)} "
                     f"std={_fmt(summary.std)}")

    for name in tests:
        if name in ("welch", "pooled"):
            cfg = TestConfig(alpha=alpha, tail=tail, variant=name)
            res = run_welch(summary_a, summary_b, cfg)
            results[name] = {
                "t": res.t_stat,
                "nu": res.nu,
                "p_value": res.p_value,
                "alpha": alpha,
                "tail": tail.value,
                "variant": name,
                "t_alpha": res.t_alpha,
                "ci1": [_num(res.ci1[0]), _num(res.ci1[1])],
                "ci2": [_num(res.ci2[0]), _num(res.ci2[1])],
                "reject_h0": res.reject_h0,
                "orientation": orientation,
            }
            decision = "reject H0" if res.reject_h0 else "fail to reject H0"
            table.append(
                f"  {name}: t={_fmt(res.t_stat)} nu={_fmt(res.nu)} "
                f"p_value={_fmt(res.p_value)} -> {decision} "
                f"(alpha={_fmt(alpha)}, {tail.value})"
            )
        else:
            if not (isinstance(group_a, PerformanceSample)
                    and isinstance(group_b, PerformanceSample)):
                raise InsufficientDataError(
                    "the bootstrap test needs raw per-seed values; "
                    "summary statistics are not resampleable"
                )
            cfg = BootstrapConfig(b_samples=bootstrap_b, alpha=alpha, rng_seed=seed)
            res = bootstrap_diff_ci(group_a, group_b, cfg, jobs=jobs)
            results[name] = {
                "ci": [res.ci_lo, res.ci_hi],
                "alpha": alpha,
                "b_samples": res.b_samples,
                "rng_seed": res.rng_seed,
                "generator_id": res.generator_id,
                "reject_h0": res.reject_h0,
                "small_sample_warning": res.small_sample_warning,
                "mean_diff": res.mean_diff,
                "orientation": orientation,
            }
            decision = "reject H0" if res.reject_h0 else "fail to reject H0"
            table.append(
                f"  bootstrap: ci=[{_fmt(res.ci_lo)}, {_fmt(res.ci_hi)}] -> {decision} "
                f"(alpha={_fmt(alpha)}, B={res.b_samples})"
            )

    recommendations = []
    if "bootstrap" in results and results["bootstrap"]["small_sample_warning"]:
        recommendations.append({
            "code": "small-sample-bootstrap",
            "message": "a group has fewer than 20 values; the bootstrap interval "
                       "under-covers at this size",
        })
    if "bootstrap" in results and bootstrap_b < 1000:
        recommendations.append({
            "code": "low-bootstrap-b",
            "message": "fewer than 1000 bootstrap replicates; interval endpoints are noisy",
        })
    if alpha >= 0.05:
        recommendations.append({
            "code": "alpha-not-strict",
            "message": "consider a significance level below 0.05",
        })

    document = {
        "command": "compare",
        "orientation": orientation,
        "groups": [
            {"label": s.label, "n": s.n, "mean": s.mean, "std": s.std}
            for s in (summary_a, summary_b)
        ],
        "results": results,
        "recommendations": recommendations,
        "manifest": _manifest("compare", resolver, args.inputs),
    }

    if fmt == "csv":
        header = ["test", "t", "nu", "p_value", "alpha", "tail",
                  "ci_lo", "ci_hi", "reject_h0"]
        rows = []
        for name in tests:
            entry = results[name]
            if name == "bootstrap":
                rows.append([name, "", "", "", entry["alpha"], "",
                             entry["ci"][0], entry["ci"][1], entry["reject_h0"]])
            else:
                ci = entry["ci1"]
                rows.append([name, entry["t"], entry["nu"], entry["p_value"],
                             entry["alpha"], entry["tail"],
                             "" if ci[0] is None else ci[0],
                             "" if ci[1] is None else ci[1],
                             entry["reject_h0"]])
        _write_output(_csv_text(header, rows), out)
    else:
        _write_output(_json_text(document), out)
    _announce(out, table)
    return EXIT_OK


# ------------------------------------------------------------------- plan


def _cmd_plan(args: argparse.Namespace) -> int:
    resolver = _Resolver(args)
    s1 = resolver.get("s1", None)
    s2 = resolver.get("s2", None)
    effect_raw = resolver.get("effect_size", None)
    alpha = resolver.get("alpha", 0.05)
    beta_target = resolver.get("beta_target", 0.2)
    n_max = resolver.get("n_max", 50)
    safety_factor = resolver.get("safety_factor", 1.5)
    fmt = resolver.get("format", "json")
    out = args.out
    if s1 is None or s2 is None or effect_raw is None:
        raise DomainError("plan needs --s1, --s2, and --effect-size")
    effects = _parse_effect_sizes(effect_raw)
    if len(effects) != 1:
        raise DomainError("plan takes exactly one effect size")

    query = PowerQuery(s1=s1, s2=s2, effect_size=effects[0], alpha=alpha)
    required_n = required_sample_size(query, beta_target, n_max)
    beta_at_n = beta_error(query, required_n)
    recommended_n = safety_margin(required_n, safety_factor)

    document = {
        "command": "plan",
        "query": {"s1": s1, "s2": s2, "effect_size": effects[0],
                  "alpha": alpha, "tail": "one-tail"},
        "beta_target": beta_target,
        "n_max": n_max,
        "required_n": required_n,
        "beta_at_required_n": beta_at_n,
        "safety_factor": safety_factor,
        "recommended_n": recommended_n,
        "recommendations": [{
            "code": "apply-safety-margin",
            "message": f"pilot spreads underestimate; run {recommended_n} "
                       f"seeds per group rather than {required_n}",
        }],
        "manifest": _manifest("plan", resolver, []),
    }
    if fmt == "csv":
        header = ["required_n", "beta_at_required_n", "recommended_n"]
        _write_output(_csv_text(header, [[required_n, beta_at_n, recommended_n]]), out)
    else:
        _write_output(_json_text(document), out)
    _announce(out, [
        f"plan: detect effect {_fmt(effects[0])} at alpha {_fmt(alpha)} "
        f"with spreads ({_fmt(s1)}, {_fmt(s2)})",
        f"  required n per group: {required_n} (beta there {_fmt(beta_at_n)})",
        f"  with safety factor {_fmt(safety_factor)}: run {recommended_n} seeds per group",
    ])
    return EXIT_OK


# ------------------------------------------------------------------ curve


def _cmd_curve(args: argparse.Namespace) -> int:
    resolver = _Resolver(args)
    s1 = resolver.get("s1", None)
    s2 = resolver.get("s2", None)
    effect_raw = resolver.get("effect_size", None)
    alpha = resolver.get("alpha", 0.05)
    n_min = resolver.get("n_min", 2)
    n_max = resolver.get("n_max", 50)
    fmt = resolver.get("format", "csv")
    beta_target = args.beta_target
    out = args.out
    if s1 is None or s2 is None or effect_raw is None:
        raise DomainError("curve needs --s1, --s2, and --effect-size")
    effects = _parse_effect_sizes(effect_raw)
    if n_min < 2 or n_max < n_min:
        raise DomainError(f"need 2 <= n-min <= n-max, got {n_min}..{n_max}")

    query = PowerQuery(s1=s1, s2=s2, effect_size=effects[0], alpha=alpha)
    curve = power_curve(query, range(n_min, n_max + 1), effects)
    rows = [[effect, n, beta] for effect, n, beta in curve.rows()]

    if fmt == "json":
        document = {
            "command": "curve",
            "query": {"s1": s1, "s2": s2, "alpha": alpha, "tail": "one-tail"},
            "entries": [{"effect_size": effect, "n": n, "beta": beta}
                        for effect, n, beta in curve.rows()],
            "manifest": _manifest("curve", resolver, []),
        }
        _write_output(_json_text(document), out)
    else:
        _write_output(_csv_text(["effect_size", "n", "beta"], rows), out)

    if args.plot:
        if out == "-":
            raise DomainError("--plot needs --out pointing at a file")
        from .figures import render_power_curve

        png = str(Path(out).with_suffix(".png"))
        render_power_curve(curve, png, beta_target=beta_target)
        _announce(out, [f"curve: {len(rows)} rows", f"figure written to {png}"])
    else:
        _announce(out, [f"curve: {len(rows)} rows"])
    return EXIT_OK


# -------------------------------------------------------------- calibrate


def _calibration_report_dict(report: CalibrationReport) -> dict:
    cfg = report.config
    return {
        "study": report.study,
        "test": cfg.test,
        "group_size": cfg.group_size,
        "trials": report.trials,
        "alpha": cfg.alpha,
        "rng_seed": cfg.rng_seed,
        "bootstrap_b": cfg.bootstrap_b,
        "rejection_rate": report.rejection_rate,
        "wilson_ci": [report.wilson_lo, report.wilson_hi],
        "degenerate_trials": report.degenerate_trials,
    }


def _cmd_calibrate(args: argparse.Namespace) -> int:
    resolver = _Resolver(args)
    mode = args.mode
    alpha = resolver.get("alpha", 0.05)
    seed = resolver.get("seed", 0)
    fmt = resolver.get("format", "json")
    jobs = args.jobs or 1
    out = args.out

    if mode == "std-study":
        n_min = resolver.get("n_min", 2)
        n_max = resolver.get("n_max", 30)
        draws = resolver.get("draws", 100000)
        if n_min < 2 or n_max < n_min:
            raise DomainError(f"need 2 <= n-min <= n-max, got {n_min}..{n_max}")
        rows = std_estimation_study(range(n_min, n_max + 1), draws, seed)
        csv_rows = [[row.n, row.mean_s, row.std_s] for row in rows]
        csv_text = _csv_text(["n", "mean_s", "std_s"], csv_rows)
        document = {
            "command": "calibrate",
            "mode": mode,
            "draws": draws,
            "rows": [{"n": row.n, "mean_s": row.mean_s, "std_s": row.std_s}
                     for row in rows],
            "manifest": _manifest("calibrate", resolver, []),
        }
        table = [f"std study: n={n_min}..{n_max}, {draws} draws each"]

        def plot(png: str) -> None:
            from .figures import render_std_study

            render_std_study(rows, png)

        return _finish_calibrate(fmt, out, document, csv_text, table, args.plot, plot)

    trials = resolver.get("trials", 1000)
    bootstrap_b = resolver.get("bootstrap_b", 1000)
    sizes = _parse_positive_int_list(resolver.get("group_sizes", "5,10,20"), "group size")

    if mode == "pool":
        input_format = resolver.get("input_format", None)
        metric_last_k = resolver.get("metric_last_k", 10)
        test_choice = resolver.get("test", "both")
        if not args.data:
            raise DomainError("pool mode needs --data")
        groups = load_samples(args.data, input_format, metric_last_k=metric_last_k)
        if not all(isinstance(g, PerformanceSample) for g in groups):
            raise InsufficientDataError(
                "pool calibration needs raw per-seed values, not summary statistics"
            )
        if args.label:
            matching = [g for g in groups if g.label == args.label]
            if not matching:
                raise SampleParseError(
                    f"label {args.label!r} not present in {args.data}", source=args.data
                )
            pool = matching[0]
        elif len(groups) == 1:
            pool = groups[0]
        else:
            raise SampleParseError(
                f"{args.data} holds {len(groups)} labels; pick one with --label",
                source=args.data,
            )
        tests = ["welch", "bootstrap"] if test_choice == "both" else [test_choice]
        reports = []
        for test in tests:
            for n in sizes:
                cfg = CalibrationConfig(group_size=n, trials=trials, test=test,
                                        alpha=alpha, rng_seed=seed,
                                        bootstrap_b=bootstrap_b)
                reports.append(empirical_type1_from_pool(pool, cfg, jobs=jobs))
        rate_header = "rejection_rate"
        inputs = [args.data]
        study_kind = "type1-pool"
    elif mode == "synthetic":
        if not args.dist:
            raise DomainError("synthetic mode needs --dist")
        dist = _parse_dist(args.dist)
        resolver.resolved["dist"] = dist.describe()
        if args.dist_b:
            dist_b = _parse_dist(args.dist_b)
            resolver.resolved["dist_b"] = dist_b.describe()
            test_choice = resolver.get("test", "welch")
            if test_choice != "welch":
                raise DomainError("type-2 calibration (with --dist-b) runs the welch test only")
            reports = []
            for n in sizes:
                cfg = CalibrationConfig(group_size=n, trials=trials, test="welch",
                                        alpha=alpha, rng_seed=seed,
                                        bootstrap_b=bootstrap_b)
                reports.append(empirical_type2_synthetic(dist, dist_b, cfg, jobs=jobs))
            rate_header = "failure_rate"
            study_kind = "type2-synthetic"
        else:
            test_choice = resolver.get("test", "both")
            tests = ["welch", "bootstrap"] if test_choice == "both" else [test_choice]
            reports = []
            for test in tests:
                for n in sizes:
                    cfg = CalibrationConfig(group_size=n, trials=trials, test=test,
                                            alpha=alpha, rng_seed=seed,
                                            bootstrap_b=bootstrap_b)
                    reports.append(empirical_type1_synthetic(dist, cfg, jobs=jobs))
            rate_header = "rejection_rate"
            study_kind = "type1-synthetic"
        inputs = []
    else:
        raise DomainError(f"unknown calibrate mode {mode!r}")

    ordered = sorted(reports, key=lambda r: (r.config.group_size, r.config.test))
    csv_rows = [[r.config.group_size, r.config.test, r.rejection_rate,
                 r.wilson_lo, r.wilson_hi] for r in ordered]
    csv_text = _csv_text(["n", "test", rate_header, "wilson_lo", "wilson_hi"], csv_rows)
    document = {
        "command": "calibrate",
        "mode": mode,
        "study_kind": study_kind,
        "reports": [_calibration_report_dict(r) for r in ordered],
        "manifest": _manifest("calibrate", resolver, inputs),
    }
    table = [f"calibration ({study_kind}):"]
    for report in ordered:
        table.append(
            f"  n={report.config.group_size:3d} {report.config.test:9s} "
            f"{rate_header}={report.rejection_rate:.4f} "
            f"wilson=[{report.wilson_lo:.4f}, {report.wilson_hi:.4f}]"
            + (f" degenerate={report.degenerate_trials}"
               if report.degenerate_trials else "")
        )

    def plot(png: str) -> None:
        from .figures import render_calibration_rates

        nominal = alpha if rate_header == "rejection_rate" else None
        render_calibration_rates(
            [(r.config.group_size, r.config.test, r.rejection_rate,
              r.wilson_lo, r.wilson_hi) for r in ordered],
            png, nominal=nominal,
            rate_label=rate_header.replace("_", " "),
        )

    return _finish_calibrate(fmt, out, document, csv_text, table, args.plot, plot)


def _finish_calibrate(fmt: str, out: str, document: dict, csv_text: str,
                      table: list[str], want_plot: bool, plot) -> int:
    extra = []
    if fmt == "csv":
        _write_output(csv_text, out)
    else:
        _write_output(_json_text(document), out)
        if out != "-":
            csv_path = str(Path(out).with_suffix(".csv"))
            Path(csv_path).write_text(csv_text, encoding="utf-8")
            extra.append(f"rows written to {csv_path}")
    if want_plot:
        if out == "-":
            raise DomainError("--plot needs --out pointing at a file")
        png = str(Path(out).with_suffix(".png"))
        plot(png)
        extra.append(f"figure written to {png}")
    _announce(out, table + extra)
    return EXIT_OK


# ------------------------------------------------------------------ parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=None,
                        help="significance level (default 0.05)")
    parser.add_argument("--format", choices=["csv", "json"], default=None,
                        help="report format")
    parser.add_argument("--out", default="-",
                        help="output path, - for stdout (default)")
    parser.add_argument("--config", default=None,
                        help="flat key=value config file; flags win over it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seedpower",
        description="Decide whether two stochastic algorithms really differ, "
                    "plan how many seeds that decision needs, and calibrate "
                    "the tests themselves.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="command", required=True)

    compare = subparsers.add_parser(
        "compare", help="test two groups of per-seed results for a difference")
    compare.add_argument("inputs", nargs="+", help="input files (1 or 2)")
    compare.add_argument("--test", choices=["welch", "pooled", "bootstrap", "both"],
                         default=None, help="test selection (default welch)")
    compare.add_argument("--tail", choices=["one", "two"], default=None,
                         help="tail convention; 'one' asks whether the first "
                              "label beats the second (default two)")
    compare.add_argument("--metric-last-k", type=int, default=None,
                         help="curve metric: mean of the last k points (default 10)")
    compare.add_argument("--bootstrap-b", type=int, default=None,
                         help="bootstrap replicates (default 10000)")
    compare.add_argument("--seed", type=int, default=None,
                         help="master RNG seed (default 0)")
    compare.add_argument("--jobs", type=int, default=None, help="worker threads")
    compare.add_argument("--input-format",
                         choices=["curves-csv", "scores-csv", "summary-json"],
                         default=None, help="input schema (default: inferred)")
    compare.add_argument("--lenient-metric", action="store_true",
                         help="average short curves instead of failing")
    _add_common(compare)
    compare.set_defaults(func=_cmd_compare)

    plan = subparsers.add_parser(
        "plan", help="seeds per group needed to bound both error types")
    plan.add_argument("--s1", type=float, default=None, help="pilot spread of group 1")
    plan.add_argument("--s2", type=float, default=None, help="pilot spread of group 2")
    plan.add_argument("--effect-size", default=None,
                      help="smallest difference worth detecting")
    plan.add_argument("--beta-target", type=float, default=None,
                      help="acceptable type-II error (default 0.2)")
    plan.add_argument("--n-max", type=int, default=None,
                      help="largest group size to consider (default 50)")
    plan.add_argument("--safety-factor", type=float, default=None,
                      help="padding on the required n (default 1.5)")
    _add_common(plan)
    plan.set_defaults(func=_cmd_plan)

    curve = subparsers.add_parser(
        "curve", help="tabulate type-II error over a (n, effect) grid")
    curve.add_argument("--s1", type=float, default=None, help="pilot spread of group 1")
    curve.add_argument("--s2", type=float, default=None, help="pilot spread of group 2")
    curve.add_argument("--effect-size", default=None,
                       help="comma-separated effect sizes")
    curve.add_argument("--n-min", type=int, default=None, help="smallest n (default 2)")
    curve.add_argument("--n-max", type=int, default=None, help="largest n (default 50)")
    curve.add_argument("--beta-target", type=float, default=None,
                       help="draw this target line on the figure")
    curve.add_argument("--plot", action="store_true",
                       help="also render the curve to PNG next to --out")
    _add_common(curve)
    curve.set_defaults(func=_cmd_curve)

    calibrate = subparsers.add_parser(
        "calibrate", help="measure the tests' real error rates by simulation")
    calibrate.add_argument("mode", choices=["pool", "synthetic", "std-study"],
                           help="data source for the study")
    calibrate.add_argument("--data", default=None,
                           help="pool mode: file with one algorithm's measurements")
    calibrate.add_argument("--label", default=None,
                           help="pool mode: which label to use from --data")
    calibrate.add_argument("--dist", default=None,
                           help="synthetic mode: population, kind:params")
    calibrate.add_argument("--dist-b", default=None,
                           help="synthetic mode: second population; switches to "
                                "the type-2 (miss rate) study")
    calibrate.add_argument("--test", choices=["welch", "bootstrap", "both"],
                           default=None, help="tests to calibrate (default both)")
    calibrate.add_argument("--group-sizes", default=None,
                           help="comma-separated group sizes (default 5,10,20)")
    calibrate.add_argument("--trials", type=int, default=None,
                           help="Monte Carlo trials per cell (default 1000)")
    calibrate.add_argument("--bootstrap-b", type=int, default=None,
                           help="bootstrap replicates inside each trial (default 1000)")
    calibrate.add_argument("--seed", type=int, default=None,
                           help="master RNG seed (default 0)")
    calibrate.add_argument("--jobs", type=int, default=None, help="worker threads")
    calibrate.add_argument("--input-format",
                           choices=["curves-csv", "scores-csv", "summary-json"],
                           default=None, help="pool input schema (default: inferred)")
    calibrate.add_argument("--metric-last-k", type=int, default=None,
                           help="curve metric for pool inputs (default 10)")
    calibrate.add_argument("--n-min", type=int, default=None,
                           help="std-study: smallest n (default 2)")
    calibrate.add_argument("--n-max", type=int, default=None,
                           help="std-study: largest n (default 30)")
    calibrate.add_argument("--draws", type=int, default=None,
                           help="std-study: samples per n (default 100000)")
    calibrate.add_argument("--plot", action="store_true",
                           help="also render the study to PNG next to --out")
    _add_common(calibrate)
    calibrate.set_defaults(func=_cmd_calibrate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnattainableTargetError as exc:
        print(f"seedpower: {exc}", file=sys.stderr)
        return EXIT_UNATTAINABLE
    except (SampleParseError, InsufficientDataError) as exc:
        print(f"seedpower: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DegenerateSampleError, NumericalError) as exc:
        print(f"seedpower: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DomainError as exc:
        print(f"seedpower: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SeedPowerError as exc:
        print(f"seedpower: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"seedpower: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
