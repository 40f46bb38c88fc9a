import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rvbc.dependency import (
    accumulate, betweenness_all, dependency_on_target, target_dependencies, top_vertices,
)
from rvbc.graph import DirectedGraph
from rvbc.spd import build_spd

from oracles import brute_force, random_dag, random_digraph


def test_path_dependencies(path3):
    dv = accumulate(build_spd(path3, 0))
    assert dv[1] == 1 and dv[2] == 0 and dv[0] == 0


def test_diamond_split(diamond):
    dv = accumulate(build_spd(diamond, 0))
    assert dv[1] == dv[2] == 0.5


def test_as_array(diamond):
    arr = accumulate(build_spd(diamond, 0)).as_array()
    assert arr.tolist() == [0, 0.5, 0.5, 0]


def test_dependency_on_target(path3):
    spd = build_spd(path3, 0)
    assert dependency_on_target(spd, 1) == 1
    assert dependency_on_target(spd, 0) == 0


def test_betweenness_path(path3):
    assert betweenness_all(path3).tolist() == [0, 1, 0]


def test_directed_four_cycle():
    # vertex 1 is interior to the geodesics 0->2, 0->3 and 3->2
    g = DirectedGraph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])
    bf = brute_force(g)
    assert bf.bc.tolist() == [3, 3, 3, 3]
    assert betweenness_all(g).tolist() == [3, 3, 3, 3]


@pytest.mark.parametrize("weighted", [False, True])
@pytest.mark.parametrize("seed", range(5))
def test_accumulate_matches_pairwise_definition(seed, weighted):
    g = random_digraph(np.random.default_rng(200 + seed), 30, 0.1, weighted=weighted)
    bf = brute_force(g)
    for s in range(g.n):
        got = accumulate(build_spd(g, s)).as_array()
        np.testing.assert_allclose(got, bf.dependency[s], rtol=1e-9, atol=1e-12)
        for r in (0, 7, 19):
            assert dependency_on_target(build_spd(g, s), r) == pytest.approx(
                bf.dependency[s, r], rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_betweenness_all_matches_brute_force(seed):
    rng = np.random.default_rng(300 + seed)
    g = random_digraph(rng, 25, 0.15, weighted=bool(seed % 2))
    bf = brute_force(g)
    for compiled in (True, False):
        np.testing.assert_allclose(betweenness_all(g, compiled=compiled), bf.bc, rtol=1e-9, atol=1e-12)


def test_compiled_target_kernel_matches_reference():
    rng = np.random.default_rng(7)
    g = random_digraph(rng, 60, 0.05)
    sources = list(range(g.n))
    for r in range(0, g.n, 7):
        fast = target_dependencies(g, sources, r)
        ref = target_dependencies(g, sources, r, compiled=False)
        np.testing.assert_allclose(fast, ref, rtol=1e-12, atol=0)


def test_nonnegative_and_sources_zero():
    g = random_digraph(np.random.default_rng(9), 40, 0.08)
    for s in range(g.n):
        dv = accumulate(build_spd(g, s))
        assert dv[s] == 0
        assert all(d >= 0 for d in dv.delta.values())
    bc = betweenness_all(g)
    assert (bc >= 0).all()
    for v in range(g.n):
        if g.out_degree(v) == 0:
            assert bc[v] == 0


def test_handshake_on_dag():
    # sum_v delta_s(v) = sum_t (sum over shortest s-t paths of interior count) / sigma_st
    g = random_dag(np.random.default_rng(11), 45, 0.12)
    bf = brute_force(g)
    for s in range(g.n):
        total = sum(accumulate(build_spd(g, s)).delta.values())
        assert total == pytest.approx(bf.dependency[s].sum(), rel=1e-9, abs=1e-12)
        # unweighted: interior vertices of an s-t geodesic = d(s, t) - 1
        expected = sum(bf.dist[s][t] - 1 for t in range(g.n)
                       if t != s and bf.dist[s][t] != float("inf"))
        assert total == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_source_order_does_not_matter():
    g = random_digraph(np.random.default_rng(13), 30, 0.1)
    base = betweenness_all(g, compiled=False)
    perm = np.random.default_rng(1).permutation(g.n).tolist()
    np.testing.assert_allclose(betweenness_all(g, sources=perm, compiled=False), base, rtol=1e-12)


def test_workers_give_same_result():
    g = random_digraph(np.random.default_rng(17), 40, 0.1)
    np.testing.assert_allclose(betweenness_all(g, workers=2), betweenness_all(g), rtol=1e-12)


def test_top_vertices_ties_by_index():
    assert top_vertices(np.array([1.0, 3.0, 3.0, 0.0]), 2) == [1, 2]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=30))
def test_bc_matches_brute_force_property(edges):
    g = DirectedGraph.from_edges(edges, n=8)
    bf = brute_force(g)
    np.testing.assert_allclose(betweenness_all(g), bf.bc, rtol=1e-9, atol=1e-12)
