import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

_acceptance = {}
_measured = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        detail = "; ".join(_measured.get(name, []))
        terminalreporter.write_line(f"{_acceptance[name]}  {name}" + (f"  [{detail}]" if detail else ""))


@pytest.fixture
def measured(request):
    """Record a measured value for the acceptance summary line of the current test."""
    notes = _measured.setdefault(request.node.name, [])

    def note(text):
        notes.append(text)
        print(text)

    return note


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def golden():
    import json

    with open(os.path.join(FIXTURES, "golden.json")) as fh:
        return json.load(fh)
