import numpy as np
import pytest

from shiftconv.coeffs import compute_tau_series
from shiftconv.deltasym import build_scheme


@pytest.fixture(scope="session")
def tau20k():
    return compute_tau_series(20000)


@pytest.fixture(scope="session")
def scheme5000():
    return build_scheme(5000)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed", "xfailed", "xpassed"):
        for rep in terminalreporter.stats.get(key, []):
            lines += [v for k, v in getattr(rep, "user_properties", []) if k == "acceptance"]
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
