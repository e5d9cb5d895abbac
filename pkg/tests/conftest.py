import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repro",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one summary line per acceptance criterion."""

    def record(number, name, ok, detail):
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {name}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
