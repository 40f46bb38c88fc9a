import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rvbc.bench import (
    GADGET_TARGET, ConfigError, ExperimentConfig, SetReport, VertexRow, generate_gadget,
    loglog_slope, pick_vertices, replace_timings, run_vertex_experiment, timing_scaling_report,
)
from rvbc.estimators import APPROXIMATE, EXACT
from rvbc.graph import write_edge_list
from rvbc.reachability import compute_rv

from oracles import brute_force, random_digraph


@pytest.fixture
def graph_file(tmp_path):
    g = random_digraph(np.random.default_rng(808), 50, 0.06)
    p = tmp_path / "g.txt"
    write_edge_list(g, p)
    return p, g


# --- gadgets ---------------------------------------------------------------

def test_fan_shape():
    g = generate_gadget("fan", 10)
    assert g.n == 12
    assert compute_rv(g, GADGET_TARGET).size == 10
    assert g.out_degree(GADGET_TARGET) == 1


def test_broom_shape():
    g = generate_gadget("broom", 10)
    assert g.n == 12
    assert compute_rv(g, GADGET_TARGET).size == 5
    assert g.out_degree(GADGET_TARGET) == 6


@pytest.mark.parametrize("kind, n", [("fan", 2), ("fan", 7), ("broom", 2), ("broom", 8)])
def test_gadget_scores_match_brute_force(kind, n):
    from rvbc.estimators import ebcd
    g = generate_gadget(kind, n)
    assert ebcd(g, GADGET_TARGET).score == pytest.approx(brute_force(g).bc[GADGET_TARGET])


@pytest.mark.parametrize("kind, n", [("fan", 1), ("broom", 7), ("star", 10)])
def test_gadget_rejects(kind, n):
    with pytest.raises(ValueError):
        generate_gadget(kind, n)


def test_scaling_report_shape():
    table = timing_scaling_report("fan", [16, 32], repeats=1)
    assert [n for n, _ in table] == [16, 32]
    assert all(t > 0 for _, t in table)
    assert loglog_slope(table[:1]) is None
    assert loglog_slope([(10, 1.0), (100, 100.0)]) == pytest.approx(2.0)


# --- config ------------------------------------------------------------------

@pytest.mark.parametrize("kw", [
    {},
    {"vertices": [1], "random_set": 2},
    {"vertices": []},
    {"random_set": 0},
    {"vertices": [1], "tau": 0},
    {"vertices": [1], "samples": 0},
    {"vertices": [1], "epsilon": 0.1},
    {"vertices": [1], "epsilon": -1, "delta": 0.1},
    {"vertices": [1], "epsilon": 1, "delta": 1.5},
    {"vertices": [1], "k": 0},
    {"vertices": [1], "seed": -1},
    {"vertices": [1], "fmt": "csv"},
    {"vertices": [1], "workers": 0},
])
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        ExperimentConfig(graph="x", **kw).validate()


def test_pick_vertices_excludes_sinks(graph_file):
    _, g = graph_file
    picked = pick_vertices(g, 10, seed=3)
    assert len(set(picked)) == 10
    assert all(g.out_degree(v) > 0 for v in picked)
    assert picked == pick_vertices(g, 10, seed=3)
    with pytest.raises(ConfigError):
        pick_vertices(g, g.n + 1, seed=0, include_sinks=True)


# --- experiments ---------------------------------------------------------------

def test_path_single_vertex(tmp_path):
    p = tmp_path / "path.txt"
    p.write_text("0 1\n1 2\n")
    rep = run_vertex_experiment(ExperimentConfig(graph=str(p), vertices=[1], oracle=True))
    (row,) = rep.rows
    assert (row.vertex, row.score, row.mode, row.rv_size) == (1, 1.0, EXACT, 1)
    assert row.exact == 1.0 and row.error == 0
    assert row.rv_ratio == pytest.approx(1 / 3)


def test_random_set_with_oracle(graph_file):
    p, g = graph_file
    cfg = ExperimentConfig(graph=str(p), random_set=10, tau=8, seed=5, oracle=True)
    rep = run_vertex_experiment(cfg)
    bf = brute_force(g)
    assert len(rep.rows) == 10
    for row in rep.rows:
        assert row.exact == pytest.approx(bf.bc[g.index_of(row.vertex)], rel=1e-9, abs=1e-12)
        if row.mode == EXACT:
            assert row.error == 0 and row.samples == 0
        else:
            assert row.rv_size > 8 and row.samples == 8
    agg = rep.aggregates()
    if any(r.mode == EXACT for r in rep.rows):
        assert agg["min_error"] == 0
    assert agg["min_rv_size"] <= agg["avg_rv_size"] <= agg["max_rv_size"]
    assert [r.seed for r in rep.rows if r.mode == APPROXIMATE] == \
        [5 + i for i, r in enumerate(rep.rows) if r.mode == APPROXIMATE]


def test_experiment_deterministic_apart_from_timings(graph_file):
    p, _ = graph_file
    cfg = ExperimentConfig(graph=str(p), random_set=6, tau=5, seed=9, oracle=True)
    a = replace_timings(run_vertex_experiment(cfg))
    b = replace_timings(run_vertex_experiment(cfg))
    assert a == b


def test_aggregates_recompute(graph_file):
    p, _ = graph_file
    rep = run_vertex_experiment(ExperimentConfig(graph=str(p), random_set=8, tau=4, oracle=True))
    doc = json.loads(rep.to_json())
    errs = [r["error"] for r in doc["rows"] if r["error"] is not None]
    assert doc["aggregates"]["max_error"] == max(errs)
    assert doc["aggregates"]["avg_error"] == pytest.approx(sum(errs) / len(errs))
    assert doc["aggregates"]["total_compute_seconds"] == pytest.approx(
        sum(r["compute_seconds"] for r in doc["rows"]), abs=1e-9)


def test_undefined_error_text():
    row = VertexRow(3, 2.0, APPROXIMATE, 5, 10, 0.5, 0.0, 0.0, 1, 0.0, None)
    assert row.error_text == "undefined"
    rep = SetReport("g", 20, (row,))
    assert SetReport.from_tsv(rep.to_tsv()) == rep
    assert rep.aggregates()["avg_error"] is None


rows = st.builds(
    VertexRow,
    vertex=st.integers(0, 10**6),
    score=st.floats(0, 1e9, allow_nan=False),
    mode=st.sampled_from([EXACT, APPROXIMATE]),
    samples=st.integers(0, 10**4),
    rv_size=st.integers(0, 10**6),
    rv_ratio=st.floats(0, 1),
    compute_seconds=st.integers(0, 10**5).map(lambda x: x / 1000),
    rv_seconds=st.integers(0, 10**5).map(lambda x: x / 1000),
    seed=st.one_of(st.none(), st.integers(0, 10**6)),
    exact=st.one_of(st.none(), st.floats(0, 1e9, allow_nan=False)),
    error=st.one_of(st.none(), st.floats(0, 1e4, allow_nan=False)),
).filter(lambda r: r.exact is not None or r.error is None)


@settings(max_examples=100, deadline=None)
@given(st.lists(rows, max_size=8))
def test_report_round_trips(rs):
    rep = SetReport("some/graph.txt", 1234, tuple(rs))
    assert SetReport.from_json(rep.to_json()) == rep
    assert SetReport.from_tsv(rep.to_tsv()) == rep
