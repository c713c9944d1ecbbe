"""One test per acceptance criterion at the full scale; each prints its pass/fail line."""

import pytest

from shiftconv.lab.suite import CHECKS, run_check


@pytest.mark.slow
@pytest.mark.parametrize("criterion", sorted(CHECKS))
def test_acceptance(criterion, record_property):
    result = run_check(criterion, "full")
    print(result.line())
    record_property("acceptance", result.line())
    if "error" in result.details:
        print(result.details["traceback"])
    assert result.passed, result.details
