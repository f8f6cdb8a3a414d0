from __future__ import annotations

import pytest
from hypothesis import settings, strategies as st

from cliquebounds.graph import Graph, petersen

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    mask = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return Graph.from_edge_mask(n, mask)


@pytest.fixture(scope="session")
def petersen_graph() -> Graph:
    return petersen()


# --- acceptance summary ---------------------------------------------------------------

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "failures": [], "tests": 0})
    if report.when == "call":
        entry["tests"] += 1
    if report.failed:
        message = report.longrepr.reprcrash.message if hasattr(report.longrepr, "reprcrash") else str(report.longrepr)
        entry["failures"].append(f"{item.name}: {message.splitlines()[0]}")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "FAIL" if entry["failures"] else "PASS"
        terminalreporter.write_line(f"criterion {number} [{status}] {entry['title']} ({entry['tests']} checks)")
        for failure in entry["failures"]:
            terminalreporter.write_line(f"    {failure}")
