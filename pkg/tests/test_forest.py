import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import cycle, k, path, random_connected
from mmcut.errors import InfeasibleCut
from mmcut.forest import (
    SpanningTree, best_cut_of_tree, kruskal_tree, tree_cut_for_edge, tree_cut_values, tree_from_cut,
)
from mmcut.graph import build_graph, cut_value, is_minimal_cut


def _split_after_delete(g, tree, eid):
    """Label vertices by the component of vertex 0 after deleting ``eid``; networkx oracle."""
    T = nx.Graph()
    T.add_nodes_from(range(g.n))
    T.add_edges_from(g.edges[k][:2] for k in tree.edge_ids if k != eid)
    side = nx.node_connected_component(T, 0)
    return tuple(0 if v in side else 1 for v in range(g.n))


def test_kruskal_examples():
    c4 = cycle(4)  # edges (0,1),(1,2),(2,3),(0,3)
    assert kruskal_tree(c4, [0, 1, 2, 3]).edge_ids == (0, 1, 2)
    p = path(1, 2, 3)
    assert sorted(kruskal_tree(p, [2, 0, 1]).edge_ids) == [0, 1, 2]
    k3 = k(3)  # edges (0,1),(0,2),(1,2)
    t = kruskal_tree(k3, [1, 2, 0])
    assert t.edge_ids == (1, 2)


def test_kruskal_trees_are_valid(rng):
    for _ in range(50):
        g = random_connected(rng, int(rng.integers(2, 12)))
        t = kruskal_tree(g, rng.permutation(g.m).tolist())
        assert t.is_valid()


def test_best_cut_examples():
    k4 = k(4)
    star_ids = tuple(k4.edge_id(0, v) for v in (1, 2, 3))
    assert best_cut_of_tree(k4, SpanningTree(k4, star_ids)).solution.cut_value == 3

    c4 = cycle(4)
    tc = best_cut_of_tree(c4, SpanningTree(c4, (0, 1, 2)))
    assert tc.solution.cut_value == 2
    # all three tree edges give 2; the first tree edge wins
    assert tc.disconnected_edge == 0

    p3 = path(1, 2)
    tc = best_cut_of_tree(p3, SpanningTree(p3, (0, 1)))
    assert tc.solution.cut_value == 2 and tc.disconnected_edge == 1


def test_tree_cut_values_match_direct_splits(rng):
    for _ in range(100):
        g = random_connected(rng, int(rng.integers(2, 11)))
        t = kruskal_tree(g, rng.permutation(g.m).tolist())
        values = tree_cut_values(g, t)
        direct = [cut_value(g, _split_after_delete(g, t, eid)) for eid in t.edge_ids]
        np.testing.assert_allclose(values, direct, rtol=0, atol=1e-9)
        best = best_cut_of_tree(g, t)
        assert best.solution.feasible
        assert best.solution.cut_value >= max(direct) - 1e-9
        assert best.solution.assignment == _split_after_delete(g, t, best.disconnected_edge)


def test_tree_from_cut_examples():
    k4 = k(4)
    t = tree_from_cut(k4, (0, 0, 1, 1))
    assert t.is_valid()
    assert tree_cut_for_edge(k4, t, t.edge_ids[0]).solution.assignment == (0, 0, 1, 1)

    c4 = cycle(4)
    t = tree_from_cut(c4, (0, 0, 1, 1))
    assert set(t.edge_ids[1:]) == {c4.edge_id(0, 1), c4.edge_id(2, 3)}

    p3 = path(1, 1)
    t = tree_from_cut(p3, (0, 1, 1))
    assert t.edge_ids[0] == p3.edge_id(0, 1) and sorted(t.edge_ids) == [0, 1]


def test_tree_from_cut_rejects_infeasible():
    with pytest.raises(InfeasibleCut):
        tree_from_cut(cycle(4), (0, 1, 0, 1))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31), n=st.integers(2, 8))
def test_tree_from_cut_round_trip(seed, n):
    rng = np.random.default_rng(seed)
    g = random_connected(rng, n)
    for bits in itertools.product((0, 1), repeat=n - 1):
        a = (0, *bits)
        if not is_minimal_cut(g, a):
            continue
        t = tree_from_cut(g, a)
        assert t.is_valid()
        tc = tree_cut_for_edge(g, t, t.edge_ids[0])
        assert tc.solution.assignment == a
        assert tc.solution.cut_value == cut_value(g, a)
