import re

_ACCEPTANCE: dict[int, list] = {}
_NAME = re.compile(r"test_acceptance\.py::test_c(\d+)_(\w+?)(?:\[|$)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        entry = _ACCEPTANCE.setdefault(int(m.group(1)), [m.group(2), 0, 0, []])
        entry[1 if report.passed else 2] += 1
        entry[3].extend(f"{k}: {v}" for k, v in report.user_properties)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    width = max(len(entry[0]) for entry in _ACCEPTANCE.values())
    for k in sorted(_ACCEPTANCE):
        name, passed, failed, notes = _ACCEPTANCE[k]
        verdict = "FAIL" if failed else "PASS"
        terminalreporter.write_line(f"criterion {k:2d}  {name.ljust(width)}  {verdict}  "
                                    f"({passed}/{passed + failed} cases)")
        for note in notes:
            terminalreporter.write_line(f"    {note}")
