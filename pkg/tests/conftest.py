import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "torclus", max_examples=200, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("torclus")

CRITERIA = {
    1: "Cartan tables",
    2: "sl3 C_Q corpus",
    3: "two-parameter A1 example",
    4: "C1^ob A2 exchange graph",
    5: "C1 seeds A2/A3/D4",
    6: "sl2 T-system and KR recursion",
    7: "A-Y commutation and power products",
    8: "B2 appendix",
    9: "property suites",
}

_outcomes: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    crit = getattr(report, "_criterion", None)
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(crit, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep._criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        res = _outcomes.get(n)
        if res is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(res) else "FAIL"
        detail = f"{sum(res)}/{len(res)} checks" if res else ""
        terminalreporter.write_line(f"criterion {n} ({CRITERIA[n]}): {status} {detail}".rstrip())
