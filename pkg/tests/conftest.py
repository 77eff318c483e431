"""Per-criterion pass/fail summary for the acceptance suite.

Acceptance tests carry ``@pytest.mark.criterion(n, "title")`` and may attach
a short measurement string with the ``record`` fixture.  A criterion passes
only if every test carrying its number passes.
"""

import pytest

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test checks")


@pytest.fixture
def record(request):
    def add(text: str) -> None:
        request.node.user_properties.append(("measured", text))
    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        n, title = marker.args
        entry = _results.setdefault(n, {"title": title, "ok": True, "notes": []})
        entry["ok"] &= report.outcome == "passed"
        for key, value in item.user_properties:
            if key == "measured":
                entry["notes"].append(value)
        if report.outcome != "passed":
            entry["notes"].append(f"{item.name} {report.outcome.upper()}")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        entry = _results[n]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {n} [{status}] {entry['title']}")
        for note in entry["notes"]:
            terminalreporter.write_line(f"    {note}")
