import numpy as np
import pytest

from airydet import symbols


@pytest.fixture(params=symbols.canonical_symbols(), ids=lambda f: f.label())
def canonical(request):
    return request.param


@pytest.fixture
def bump():
    """The shifted Gaussian 0.25 exp(-(x+1)^2) used by the Monte Carlo checks."""
    return symbols.shifted_gauss(0.25, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
