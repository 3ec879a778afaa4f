import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from branchsat.formula import Formula

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def clause_strategy(max_var=6, max_width=4):
    return (
        st.lists(st.integers(1, max_var), min_size=1, max_size=max_width, unique=True)
        .flatmap(lambda vs: st.tuples(*[st.sampled_from([v, -v]) for v in vs]))
        .map(list)
    )


def formula_strategy(max_var=6, max_clauses=14, max_width=4, min_clauses=0):
    return st.lists(
        clause_strategy(max_var, max_width), min_size=min_clauses, max_size=max_clauses
    ).map(Formula)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
