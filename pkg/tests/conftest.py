import random

import pytest

ACCEPTANCE_LINES: list = []


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture
def report():
    """Record one pass/fail line for an acceptance criterion."""

    def emit(label: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
