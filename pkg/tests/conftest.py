import pytest

from hurwitz.validation import parse_candidate

ACCEPTANCE_LINES = []


@pytest.fixture
def cand():
    """Parse candidate text, e.g. ``cand("o0 <-[4]- o0 : 2,2|2,2|3,1")``."""
    return parse_candidate


@pytest.fixture
def acceptance_line():
    def record(number, title, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title}" + (f" ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
