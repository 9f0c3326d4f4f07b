from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_ACCEPTANCE: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[report.nodeid] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for nodeid, (outcome, seconds) in sorted(_ACCEPTANCE.items(), key=lambda kv: _order(kv[0], CRITERIA)):
        name = nodeid.split("::")[-1]
        base, _, param = name.partition("[")
        label = CRITERIA.get(base, base) + (f" [{param}" if param else "")
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  ({seconds:.2f} s)")


def _order(nodeid: str, criteria: dict[str, str]) -> int:
    name = nodeid.split("::")[-1].partition("[")[0]
    names = list(criteria)
    return names.index(name) if name in names else len(names)
