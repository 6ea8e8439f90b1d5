import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """``criterion(num, ok, detail)`` records one acceptance line."""
    lines = request.config.stash[_LINES]

    def record(num: int, ok: bool, detail: str = "") -> bool:
        line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        lines.append((num, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
