from __future__ import annotations

import os
from pathlib import Path

import pytest

from mlcpm import MultiplexNetwork, read_multiplex

DATA = Path(__file__).parent / "data"

_acceptance: list[tuple[str, str, str]] = []


def aucs_path() -> Path:
    return Path(os.environ.get("MLCPM_AUCS", DATA / "aucs.mpx"))


@pytest.fixture(scope="session")
def aucs() -> MultiplexNetwork:
    path = aucs_path()
    if not path.exists():
        pytest.skip(f"AUCS edge list not found at {path}")
    return read_multiplex(path)


def net_from(text: str) -> MultiplexNetwork:
    """Build a network from 'a b layer' lines."""
    return MultiplexNetwork.from_edges(tuple(line.split()) for line in text.strip().splitlines())


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = getattr(item, "acceptance_detail", "")
        _acceptance.append((marker.args[0], report.outcome.upper(), detail))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in _acceptance:
        status = "PASS" if outcome == "PASSED" else "FAIL" if outcome == "FAILED" else outcome
        line = f"[{status}] {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
