import pytest

from rdsim.scenario import CITIES, default_sweep_bases, preset_weather, run_sweep

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def city_weather():
    return {c: preset_weather(c) for c in CITIES}


@pytest.fixture(scope="session")
def sweep_rows():
    return run_sweep(default_sweep_bases())


@pytest.fixture
def record():
    """Store a one-line verdict for the acceptance summary."""
    def _record(number, title, ok, detail=""):
        ACCEPTANCE[number] = (title, bool(ok), detail)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {verdict}  {title}  {detail}")
