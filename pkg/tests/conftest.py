import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.nodeid.startswith("tests/test_acceptance.py::") or "test_acceptance.py::" in item.nodeid:
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            item.user_properties.append(("criterion", doc))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    failed = report.failed
    if report.when == "call" or failed:
        previous = _ACCEPTANCE.get(report.nodeid, ("PASS", ""))[0]
        outcome = "FAIL" if failed or previous == "FAIL" else ("PASS" if report.passed else "SKIP")
        _ACCEPTANCE[report.nodeid] = (outcome, props["criterion"])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for outcome, line in _ACCEPTANCE.values():
        terminalreporter.write_line(f"{outcome}  {line}")
