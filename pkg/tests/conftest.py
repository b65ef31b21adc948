import re

import pytest

_AC_RE = re.compile(r"test_acceptance\.py::test_ac(\d+)_")
_outcomes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = _AC_RE.search(item.nodeid)
    if m and (rep.when == "call" or rep.failed):
        k = int(m.group(1))
        if rep.failed or k not in _outcomes:
            _outcomes[k] = "FAIL" if rep.failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        status = _outcomes.get(k, "NOT RUN")
        terminalreporter.write_line(f"AC{k:>2} {status}  {CRITERIA[k]}")
