import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=300, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

nonzero = st.integers(-9, 9).filter(lambda x: x != 0)


@st.composite
def cf_terms(draw, min_size=1, max_size=8):
    """Term lists with no zero terms (the first term may be 0)."""
    terms = draw(st.lists(nonzero, min_size=min_size, max_size=max_size))
    if draw(st.booleans()) and len(terms) > 1:
        terms[0] = 0
    return terms


@st.composite
def positive_cf(draw, min_size=1, max_size=6, hi=6):
    return draw(st.lists(st.integers(1, hi), min_size=min_size, max_size=max_size))


@pytest.fixture(scope="session")
def fixtures():
    from hardunknots import fixtures as fx
    return {n: fx.load(n) for n in fx.names()}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
