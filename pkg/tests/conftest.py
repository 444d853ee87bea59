import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# one summary line per acceptance criterion, printed after the run
_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _CRITERIA[name] = ("PASS" if report.passed else "FAIL", _CRITERIA.get(name, ("", ""))[1])


def pytest_collection_modifyitems(items):
    for item in items:
        if "test_acceptance.py::test_criterion_" in item.nodeid:
            doc = (item.function.__doc__ or "").strip().splitlines()
            _CRITERIA.setdefault(item.name, ("NOT RUN", doc[0] if doc else ""))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        state, doc = _CRITERIA[name]
        num = name.removeprefix("test_criterion_").split("_")[0]
        terminalreporter.write_line(f"criterion {int(num):2d}  {state:4s}  {doc}")
