import pytest

# one line per acceptance criterion, filled in by test_acceptance.py
CRITERIA = {}


@pytest.fixture
def criterion():
    def record(number, ok, detail):
        """``ok`` is True, False, or None for an informational criterion."""
        CRITERIA[number] = (ok, detail)
        print(f"criterion {number}: {_status(ok)} ({detail})")
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        ok, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2}: {_status(ok)}  {detail}")


def _status(ok):
    return "INFO" if ok is None else "PASS" if ok else "FAIL"
