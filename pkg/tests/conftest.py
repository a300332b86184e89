import pytest

_results = []


@pytest.fixture
def criterion():
    """Record one acceptance-criterion outcome and assert it."""

    def record(num, passed, detail):
        _results.append((num, passed, detail))
        assert passed, f"criterion {num} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num, passed, detail in sorted(_results):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status} - {detail}")
