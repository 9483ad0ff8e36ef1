import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", max_examples=100, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")



@pytest.fixture(scope="session")
def bounded_enumeration():
    """Simple and double data for p = 3, at most 3 vertices, |m| <= 4, t = 1, with the time it took."""
    from degen.arith import PrimeContext
    from degen.galois import enum_double, enum_simple

    ctx = PrimeContext(3, 4)
    start = time.perf_counter()
    data = enum_simple(ctx, 3, 4, 1) + enum_double(ctx, 3, 4, 1)
    return ctx, data, time.perf_counter() - start


_criteria: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria.setdefault(mark.args[0], []).append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        ok = all(o == "passed" for _, o in results)
        bad = [name for name, o in results if o != "passed"]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({len(results)} checks)"
        if bad:
            line += " failing: " + ", ".join(bad)
        terminalreporter.write_line(line)
