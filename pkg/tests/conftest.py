from __future__ import annotations

import os
from pathlib import Path

import pytest

from enriques_nd.io import DATA_DIR


def pytest_addoption(parser):
    parser.addoption(
        "--fixtures-dir",
        default=os.environ.get("ENRIQUES_ND_FIXTURES"),
        help="directory with the optional Kondo-type model files kondo-I.json ... kondo-VII.json",
    )


@pytest.fixture(scope="session")
def fixtures_dir(request) -> Path | None:
    value = request.config.getoption("--fixtures-dir")
    return Path(value) if value else None


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Records one pass/fail line per acceptance criterion; the lines are
    printed again in the terminal summary."""

    def record(label: str, ok: bool, detail: str, skipped: bool = False) -> None:
        status = "SKIP" if skipped else ("PASS" if ok else "FAIL")
        line = f"criterion {label}: {status}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
