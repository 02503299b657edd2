from __future__ import annotations

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    """Append one ``CRITERION k: PASS|FAIL`` line to the terminal summary."""

    def record(number: int, title: str, passed: bool, seconds: float, detail: str = ""):
        status = "PASS" if passed else "FAIL"
        tail = f" -- {detail}" if detail else ""
        ACCEPTANCE_LINES.append(f"CRITERION {number}: {status} {title} ({seconds:.1f}s){tail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
