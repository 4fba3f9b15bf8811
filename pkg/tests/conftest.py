import pytest

REPORT: list[str] = []


@pytest.fixture
def report(capsys):
    """Record and print one PASS/FAIL line per acceptance criterion."""

    def _report(num: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"[criterion {num:2d}] {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        REPORT.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(REPORT):
            terminalreporter.write_line(line)
