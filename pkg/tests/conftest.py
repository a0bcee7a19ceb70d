import pytest

ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test's outcome decides pass/fail."""
    name = request.node.name.removeprefix("test_")
    detail = {"text": ""}
    yield detail
    ACCEPTANCE[name] = detail["text"]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and "criterion" in getattr(item, "fixturenames", ()):
        item.config._acceptance = getattr(item.config, "_acceptance", {})
        item.config._acceptance[item.name.removeprefix("test_")] = report.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results):
        status = "PASS" if results[name] else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  {ACCEPTANCE.get(name, '')}")
