import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cobtrace.cob import LabelSet

settings.register_profile(
    "repo", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=100
)
settings.load_profile("repo")

ABC = LabelSet("a b c")
AB = LabelSet("a b")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


@pytest.fixture
def abc():
    return ABC


@pytest.fixture
def ab():
    return AB


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
