import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA_FILE = "test_acceptance.py"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per acceptance criterion."""
    rows = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if getattr(rep, "when", None) != "call":
                continue
            nodeid = getattr(rep, "nodeid", "")
            if CRITERIA_FILE not in nodeid:
                continue
            rows.append((nodeid.split("::")[-1], status == "passed"))
    if not rows:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, ok in sorted(rows):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
