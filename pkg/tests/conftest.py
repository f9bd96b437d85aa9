import math

import pytest
from hypothesis import settings

from presslab.symbolic import full_shift, golden_mean_shift

settings.register_profile("presslab", max_examples=40, deadline=None)
settings.load_profile("presslab")

LOG2 = math.log(2)
LOG3 = math.log(3)
LOG_PHI = math.log((1 + math.sqrt(5)) / 2)

_ACCEPTANCE: dict = {}


@pytest.fixture(params=["full", "golden"])
def one_sided(request):
    return full_shift(2) if request.param == "full" else golden_mean_shift()


@pytest.fixture(params=["full", "golden"])
def two_sided(request):
    return full_shift(2, "two") if request.param == "full" else golden_mean_shift("two")


@pytest.fixture
def acceptance():
    """Record ``(criterion, passed, detail)`` for the end-of-run acceptance table."""
    def record(number: int, title: str, passed: bool, detail: str = ""):
        _ACCEPTANCE[number] = (title, bool(passed), detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed, detail = _ACCEPTANCE[number]
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
