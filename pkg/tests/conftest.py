from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# filled by the ``criterion`` decorator in test_acceptance.py
ACCEPTANCE: list[tuple[str, str, str, float, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key, title, status, secs, note in sorted(ACCEPTANCE, key=lambda r: r[0]):
        extra = f"  ({note})" if note else ""
        terminalreporter.write_line(f"[{status}] criterion {key}: {title} [{secs:.1f}s]{extra}")
