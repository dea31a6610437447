import pytest

from cmsbasis.multipoly import VarSpace


@pytest.fixture
def space21():
    return VarSpace(2, 1)


@pytest.fixture
def space11():
    return VarSpace(1, 1)


_CRITERIA: list[tuple[str, str, float]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_A" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        tag = "A" + str(int(name[6:8]))
        _CRITERIA.append((tag, "PASS" if report.passed else "FAIL", report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for tag, outcome, dt in _CRITERIA:
        terminalreporter.write_line(f"{tag:<4} {outcome}  ({dt:.2f} s)")
