from __future__ import annotations

import functools

from hypothesis import HealthCheck, settings

from detlift.census import run_census
from detlift.ringspec import parse_ring

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# Lines emitted by test_acceptance.py, echoed after the run.
ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def census_of(spec: str):
    return run_census(parse_ring(spec), max_cardinality=12)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
