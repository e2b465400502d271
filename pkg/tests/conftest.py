import json

import numpy as np
import pytest

from lcdkit.cli import tables_dir


def load_table(stem: str) -> dict:
    return json.loads((tables_dir() / f"{stem}.json").read_text())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            name = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in name and rep.when == "call":
                num = int(name.rsplit("_", 1)[-1].split("[")[0])
                lines.append((num, "PASS" if rep.passed else "FAIL", rep.duration))
    if lines:
        terminalreporter.section("acceptance criteria")
        for num, status, secs in sorted(lines):
            terminalreporter.write_line(f"criterion {num}: {status} ({secs:.1f}s)")
