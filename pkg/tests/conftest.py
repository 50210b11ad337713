import re

ACCEPTANCE_FILE = "test_acceptance.py"
_results: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if ACCEPTANCE_FILE not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    number, name = int(m.group(1)), m.group(2)
    if report.failed:
        _results[number] = ("FAIL", name)
    elif report.when == "call" and number not in _results:
        _results[number] = ("PASS", name)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        verdict, name = _results[number]
        terminalreporter.write_line(f"ACCEPTANCE {number} {verdict} {name}")
