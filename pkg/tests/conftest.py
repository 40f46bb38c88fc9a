import pytest

from rvbc.graph import DirectedGraph

_acceptance: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        detail = dict(item.user_properties).get("detail", "")
        if rep.skipped and isinstance(rep.longrepr, tuple):
            detail = rep.longrepr[2]
        _acceptance[marker.args[0]] = (marker.args[1], rep.outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    word = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}
    for cid in sorted(_acceptance):
        title, outcome, detail = _acceptance[cid]
        line = f"{cid} {word.get(outcome, outcome.upper())}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture
def path3():
    """0 -> 1 -> 2"""
    return DirectedGraph.from_edges([(0, 1), (1, 2)])


@pytest.fixture
def diamond():
    """0 -> {1, 2} -> 3"""
    return DirectedGraph.from_edges([(0, 1), (0, 2), (1, 3), (2, 3)])


# Our drawing of the reach-set example: r1 = 0, v1..v5 = 1..5, and a
# two-vertex cluster 6, 7 standing in for the hatched region. Only v2, v4
# and v5 have a path to r1.
FIG4_EDGES = [
    (5, 4), (4, 2), (2, 0),     # v5 -> v4 -> v2 -> r1
    (0, 3),                     # r1 -> v3
    (1, 6), (6, 7), (7, 1),     # v1 and the hatched cluster
    (1, 3), (3, 6), (5, 3),
]


@pytest.fixture
def fig4():
    return DirectedGraph.from_edges(FIG4_EDGES, n=8)
