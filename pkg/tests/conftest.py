import pytest

from coloperad.groups import make_group

NAMED = ["trivial", "Z2", "Z3", "Z4", "S3", "D4", "Q8"]


@pytest.fixture(params=NAMED)
def group(request):
    return make_group(request.param)


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
