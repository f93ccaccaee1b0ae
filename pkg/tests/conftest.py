import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))
            item.user_properties.append(("claim", mark.args[1] if len(mark.args) > 1 else item.name))


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            props = dict(rep.user_properties)
            if "criterion" not in props:
                continue
            ok = outcome == "passed"
            results.setdefault(props["criterion"], []).append((ok, props.get("claim", ""), props.get("measured", "")))
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(results, key=lambda c: int(c.lstrip("C"))):
        parts = results[crit]
        verdict = "PASS" if all(ok for ok, _, _ in parts) else "FAIL"
        terminalreporter.write_line(f"{crit} {verdict}")
        for ok, claim, measured in parts:
            tail = f" [{measured}]" if measured else ""
            terminalreporter.write_line(f"    {'PASS' if ok else 'FAIL'}  {claim}{tail}")
