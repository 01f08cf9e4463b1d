import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance_record():
    def record(result):
        status = "PASS" if result.passed else "FAIL"
        ACCEPTANCE_LINES[result.number] = (
            f"criterion {result.number}: {status}  {result.title}: {result.value} "
            f"(expected {result.expected}; {result.seconds:.2f} s)"
        )

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
