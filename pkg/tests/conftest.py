from contextlib import contextmanager

import pytest

from seedpower.sample_model import PerformanceSample, SummaryStats

# One line per acceptance criterion, printed in the terminal summary so the
# pass/fail verdicts survive output capture.
_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    @contextmanager
    def check(number: int, description: str):
        try:
            yield
        except BaseException:
            _ACCEPTANCE_LINES.append(f"[criterion {number:02d}] FAIL - {description}")
            raise
        _ACCEPTANCE_LINES.append(f"[criterion {number:02d}] PASS - {description}")

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


# Pilot statistics reused across several suites: two groups of 5 seeds with
# (mean, std) = (4905, 990) and (3523, 1341).
@pytest.fixture
def pilot_a() -> SummaryStats:
    return SummaryStats(n=5, mean=4905.0, std=990.0, label="algoA")


@pytest.fixture
def pilot_b() -> SummaryStats:
    return SummaryStats(n=5, mean=3523.0, std=1341.0, label="algoB")


@pytest.fixture
def raw_pair() -> tuple[PerformanceSample, PerformanceSample]:
    a = PerformanceSample("algoA", (4690.0, 5712.0, 5998.0, 3785.0, 4340.0))
    b = PerformanceSample("algoB", (2830.0, 4120.0, 3615.0, 1925.0, 5125.0))
    return a, b


@pytest.fixture
def scores_csv(tmp_path, raw_pair):
    a, b = raw_pair
    lines = ["label,seed,score"]
    for group in (a, b):
        for seed, value in enumerate(group.values):
            lines.append(f"{group.label},{seed},{value}")
    path = tmp_path / "scores.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)
