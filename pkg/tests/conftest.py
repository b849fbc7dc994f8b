import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def acceptance_report(request):
    """Record one PASS/FAIL line for an acceptance criterion."""
    lines = request.config.stash[_LINES]

    def report(number: int, title: str, passed: bool, detail: str, elapsed: float,
               budget: float) -> str:
        status = "PASS" if passed else "FAIL"
        line = (f"[{status}] criterion {number}: {title} | {detail} | "
                f"{elapsed:.2f}s (budget {budget:g}s)")
        lines.append((number, line))
        print(line)
        return line

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
