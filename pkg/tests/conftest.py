import itertools

import networkx as nx
import numpy as np
import pytest

from mmcut.graph import Graph, build_graph


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_weighted_edges_from(g.edges)
    return G


def oracle_max_minimal_cut(g: Graph) -> float:
    """Exhaustive search using networkx connectivity; independent of the library."""
    G = to_nx(g)
    best = -1.0
    verts = list(range(g.n))
    for r in range(1, g.n):
        for side in itertools.combinations(verts, r):
            if 0 not in side:
                continue
            s = set(side)
            rest = [v for v in verts if v not in s]
            if not nx.is_connected(G.subgraph(side)) or not nx.is_connected(G.subgraph(rest)):
                continue
            val = sum(w for u, v, w in g.edges if (u in s) != (v in s))
            best = max(best, val)
    return best


def random_connected(rng: np.random.Generator, n: int, p: float = 0.4, weighted: bool = True) -> Graph:
    """Random spanning tree plus extra G(n, p) edges."""
    perm = rng.permutation(n)
    pairs = {tuple(sorted((int(perm[i]), int(perm[rng.integers(0, i)])))) for i in range(1, n)}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            pairs.add((u, v))
    edges = [(u, v, float(rng.integers(1, 10)) if weighted else 1.0) for u, v in sorted(pairs)]
    return build_graph(n, edges)


def random_bridgeless(rng: np.random.Generator, n: int, p: float = 0.4, weighted: bool = True) -> Graph:
    while True:
        g = random_connected(rng, n, p, weighted)
        if not list(nx.bridges(to_nx(g))):
            return g


def random_with_bridge(rng: np.random.Generator, n: int, weighted: bool = True) -> Graph:
    while True:
        g = random_connected(rng, n, float(rng.uniform(0.1, 0.5)), weighted)
        if list(nx.bridges(to_nx(g))):
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def k(n: int, w: float = 1.0) -> Graph:
    return build_graph(n, [(u, v, w) for u, v in itertools.combinations(range(n), 2)])


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n, 1.0) for i in range(n)])


def path(*weights: float) -> Graph:
    return build_graph(len(weights) + 1, [(i, i + 1, w) for i, w in enumerate(weights)])


def barbell(bridge_w: float = 1.0) -> Graph:
    return build_graph(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1), (2, 3, bridge_w)])


def star(leaves: int = 3) -> Graph:
    return build_graph(leaves + 1, [(0, i, 1.0) for i in range(1, leaves + 1)])


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
