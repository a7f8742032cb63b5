"""Prints one PASS/FAIL line per acceptance criterion after the run."""


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if report.when not in ("call", "setup"):
                continue
            props = dict(getattr(report, "user_properties", ()))
            if "criterion" in props:
                rows.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL",
                             props.get("summary", "")))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, verdict, summary in sorted(rows):
        terminalreporter.write_line(f"{verdict} criterion {number:>2}: {summary}")
