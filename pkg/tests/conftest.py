import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_outcomes: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    num, name = int(m.group(1)), m.group(2)
    failed = report.failed
    if report.when == "call" or failed:
        prev = _outcomes.get(num, ("PASS", name))[0]
        _outcomes[num] = ("FAIL" if failed or prev == "FAIL" else "PASS", name)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        verdict, name = _outcomes[num]
        terminalreporter.write_line(f"criterion {num} ({name.replace('_', ' ')}): {verdict}")
