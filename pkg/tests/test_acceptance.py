"""One test per acceptance criterion; a PASS/FAIL line for each is printed in the summary."""
import pytest

from shacycl.acceptance import run_criterion
from shacycl.cli import DEFAULT_TIME_BUDGET_SECS
from shacycl.intlin import BudgetExceeded, time_budget

TIME_LIMITS = {1: 5.0, 2: 600.0, 3: 30.0, 5: DEFAULT_TIME_BUDGET_SECS}


@pytest.mark.parametrize("number", range(1, 9))
def test_criterion(number, acceptance_record):
    with time_budget(DEFAULT_TIME_BUDGET_SECS):
        try:
            result = run_criterion(number)
        except BudgetExceeded:
            pytest.fail(f"criterion {number} exceeded the {DEFAULT_TIME_BUDGET_SECS:g} s budget")
    acceptance_record(result)
    print(f"criterion {number}: {'PASS' if result.passed else 'FAIL'}  {result.value}")
    if number in TIME_LIMITS:
        assert result.seconds < TIME_LIMITS[number]
    assert result.passed, "\n".join([result.value] + result.details[:20])
