import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from royden.cases import EXAMPLE_H, QUARTIC_H

settings.register_profile(
    "royden", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("royden")

DATA = Path(__file__).parent / "data"


@pytest.fixture
def example_h():
    return EXAMPLE_H


@pytest.fixture
def quartic_h():
    return QUARTIC_H


@pytest.fixture(scope="session")
def baselines():
    return json.loads((DATA / "oracle_baselines.json").read_text())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
