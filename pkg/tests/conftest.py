import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spiralflow import SolutionParams, build_profile, flux_bound  # noqa: E402


def sweep_params():
    """All valid (n, flux, a) from n in 1..4, a in {0, 0.5, 2}, flux in {0, -4 pi, flux_max - 0.1}."""
    out = []
    for n in (1, 2, 3, 4):
        for a in (0.0, 0.5, 2.0):
            for flux in (0.0, -4.0 * math.pi, flux_bound(n, a) - 0.1):
                params = SolutionParams(n, flux, a)
                if params.in_region() and params not in out:
                    out.append(params)
    return out


SWEEP = sweep_params()


@pytest.fixture(scope="session")
def sweep_profiles():
    return [build_profile(p) for p in SWEEP]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
