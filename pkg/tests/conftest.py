import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from casimir.lifshitz import PlateSystem  # noqa: E402
from casimir.materials import PerfectConductor, Vacuum, gold_drude, gold_plasma  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# acceptance criterion id -> (passed, detail)
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def record_criterion():
    """Store a pass/fail line for the acceptance summary, then assert it."""

    def record(criterion: str, passed: bool, detail: str):
        line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_RESULTS.setdefault(criterion, []).append((bool(passed), line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: (int(k.split(".")[0]), k)):
        for _, line in ACCEPTANCE_RESULTS[key]:
            terminalreporter.write_line(line)


@pytest.fixture
def ideal():
    return PerfectConductor()


@pytest.fixture
def gold():
    return gold_drude()


@pytest.fixture
def gold_p():
    return gold_plasma()


@pytest.fixture
def ideal_1um():
    return PlateSystem(PerfectConductor(), PerfectConductor(), 1e-6)


@pytest.fixture
def vacuum_sys():
    return PlateSystem(Vacuum(), PerfectConductor(), 1e-6)
