import pytest

from verba.groups import parse_group_spec
from verba.words import parse_word

_CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Register a numbered acceptance criterion; the outcome is read back after the run."""
    def register(number, title):
        _CRITERIA[number] = {"title": title, "nodeid": request.node.nodeid}
    return register


def pytest_runtest_logreport(report):
    for entry in _CRITERIA.values():
        if entry["nodeid"] == report.nodeid and report.when == "call":
            entry["outcome"] = report.outcome
        elif entry["nodeid"] == report.nodeid and report.failed:
            entry["outcome"] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "PASS" if entry.get("outcome") == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {entry['title']}")


@pytest.fixture(scope="session")
def z52():
    return parse_group_spec("Z5*Z2")


@pytest.fixture(scope="session")
def z23():
    return parse_group_spec("Z2*Z3")


@pytest.fixture(scope="session")
def z222():
    return parse_group_spec("Z2*Z2*Z2")


@pytest.fixture(scope="session")
def z22():
    return parse_group_spec("Z2*Z2")


@pytest.fixture
def w():
    return parse_word
