import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance outcomes, filled in by tests/test_acceptance.py
ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.fixture
def record():
    def _record(name, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE[name] = (status, detail)
        print(f"[{status}] {name}: {detail}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name, (status, detail) in ACCEPTANCE.items():
        tr.write_line(f"{status}  {name}  {detail}")
