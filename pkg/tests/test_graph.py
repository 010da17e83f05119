import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import cycle, k, path, random_connected, to_nx
from mmcut.errors import DisconnectedInput, EmptyGraph, InvalidEdge, NonpositiveWeight
from mmcut.graph import (
    build_graph, complement, connected_components, cut_value, is_minimal_cut, make_solution,
    Provenance,
)
from mmcut.spectral import count_zero_eigenvalues, laplacian, laplacian_eigenvalues


def test_build_path_and_triangle():
    p3 = build_graph(3, [(0, 1, 1), (1, 2, 2)])
    assert p3.m == 2 and p3.edges == ((0, 1, 1.0), (1, 2, 2.0))
    k3 = build_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert k3.m == 3


def test_build_rejects_bad_input():
    with pytest.raises(DisconnectedInput):
        build_graph(4, [(0, 1, 1), (2, 3, 1)])
    with pytest.raises(EmptyGraph):
        build_graph(0, [])
    with pytest.raises(NonpositiveWeight):
        build_graph(2, [(0, 1, 0.0)])
    with pytest.raises(NonpositiveWeight):
        build_graph(2, [(0, 1, -1.0)])
    with pytest.raises(InvalidEdge):
        build_graph(2, [(0, 2, 1.0)])


def test_build_drops_loops_and_duplicates(caplog):
    g = build_graph(3, [(0, 1, 1), (1, 0, 5), (1, 1, 2), (1, 2)])
    assert g.edges == ((0, 1, 1.0), (1, 2, 1.0))
    assert "self-loop" in caplog.text and "duplicate" in caplog.text


def test_cut_value_examples():
    assert cut_value(k(4), (0, 0, 1, 1)) == 4
    assert cut_value(k(4), (1, 1, 1, 1)) == 0
    tri = build_graph(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])
    assert cut_value(tri, (1, 0, 0)) == 4


def test_is_minimal_cut_examples():
    c4 = cycle(4)
    assert is_minimal_cut(c4, (0, 0, 1, 1))
    assert not is_minimal_cut(c4, (0, 1, 0, 1))
    assert not is_minimal_cut(c4, (0, 0, 0, 0))


def test_connected_components_examples():
    assert connected_components(path(1, 1), [0, 2])[0] == 2
    assert connected_components(k(3), range(3))[0] == 1
    assert connected_components(k(3), [1])[0] == 1


def test_spectra_examples():
    np.testing.assert_allclose(laplacian_eigenvalues(k(3).structure), [0, 3, 3], atol=1e-12)
    np.testing.assert_allclose(laplacian_eigenvalues(path(1, 1).structure), [0, 1, 3], atol=1e-12)
    two_edges = np.zeros((4, 4))
    two_edges[0, 1] = two_edges[1, 0] = two_edges[2, 3] = two_edges[3, 2] = 1
    np.testing.assert_allclose(laplacian_eigenvalues(two_edges), [0, 0, 2, 2], atol=1e-12)


def test_laplacian_rows_sum_to_zero(rng):
    g = random_connected(rng, 8)
    np.testing.assert_allclose(laplacian(g.weight_matrix).sum(axis=1), 0, atol=1e-12)


def test_solution_recomputes_value_and_feasibility():
    s = make_solution(cycle(4), (0, 1, 0, 1), Provenance.GENETIC)
    assert s.cut_value == 4 and not s.feasible
    assert s.complement().assignment == (1, 0, 1, 0)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31), n=st.integers(2, 10))
def test_complement_symmetry(seed, n):
    rng = np.random.default_rng(seed)
    g = random_connected(rng, n)
    a = tuple(int(x) for x in rng.integers(0, 2, n))
    assert cut_value(g, a) == cut_value(g, complement(a))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31), n=st.integers(2, 10))
def test_minimal_cut_matches_networkx(seed, n):
    rng = np.random.default_rng(seed)
    g = random_connected(rng, n)
    a = tuple(int(x) for x in rng.integers(0, 2, n))
    G = to_nx(g)
    sides = [[v for v in range(n) if a[v] == b] for b in (0, 1)]
    expected = all(sides) and all(nx.is_connected(G.subgraph(s)) for s in sides)
    assert is_minimal_cut(g, a) == expected


def test_zero_eigenvalues_count_components():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(2, 11))
        g = random_connected(rng, n)
        keep = rng.random(g.m) < 0.6
        adj = np.zeros((n, n))
        for (u, v, w), kept in zip(g.edges, keep):
            if kept:
                adj[u, v] = adj[v, u] = w
        G = nx.Graph()
        G.add_nodes_from(range(n))
        G.add_edges_from((u, v) for (u, v, _), kept in zip(g.edges, keep) if kept)
        assert count_zero_eigenvalues(laplacian_eigenvalues(adj)) == nx.number_connected_components(G)
