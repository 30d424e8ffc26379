import pytest

from hiccup.numeration import a284753_system, caption_language_check

_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def ns():
    return a284753_system()


@pytest.fixture(scope="session")
def caption_check(ns):
    # exhaustive over 5.6 million words; shared by the unit and acceptance tests
    return caption_language_check(ns, max_length=12)


@pytest.fixture
def report_line():
    """Record a one-line criterion verdict that is echoed in the terminal summary."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        _ACCEPTANCE.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
