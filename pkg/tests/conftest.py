import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


# one PASS/FAIL line per acceptance criterion in the terminal summary
_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[report.nodeid] = (report.outcome, report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    import importlib
    mod = importlib.import_module("test_acceptance")
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_criteria, key=lambda n: int(n.split("_criterion_")[1].split("_")[0])):
        outcome, _ = _criteria[nodeid]
        fn = getattr(mod, nodeid.split("::")[-1])
        n = fn.__name__.split("_")[2]
        title = (fn.__doc__ or "").strip().splitlines()[0]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if outcome == 'passed' else 'FAIL'}  {title}")
