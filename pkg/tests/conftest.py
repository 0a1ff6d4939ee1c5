import time

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from sc_blaschke.verify import run_suites

settings.register_profile(
    "numeric", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("numeric")

SUITE_SEED = 42
SUITE_TRIALS = 200

#: one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def suite_run():
    """All property suites on the 200 seeded specs, with the wall time of drawing plus checking."""
    start = time.perf_counter()
    results, samples = run_suites(SUITE_SEED, SUITE_TRIALS)
    return results, samples, time.perf_counter() - start


@pytest.fixture(scope="session")
def suite_samples(suite_run):
    return suite_run[1]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
