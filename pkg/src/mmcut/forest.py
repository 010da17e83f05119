"""Spanning trees as carriers of feasible cuts.

Deleting any edge of a spanning tree splits it into two subtrees, and both
sides of that split are connected in the graph; conversely every feasible cut
is produced this way by some tree.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .errors import InfeasibleCut
from .graph import Graph, Provenance, Solution, is_minimal_cut, make_solution


@dataclass(frozen=True)
class SpanningTree:
    graph: Graph = field(repr=False, compare=False)
    edge_ids: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.graph.n

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.graph.n)]
        for eid in self.edge_ids:
            u, v, _ = self.graph.edges[eid]
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return adj

    def is_valid(self) -> bool:
        """Acyclic, spanning, connected, and built from graph edges."""
        g = self.graph
        if len(self.edge_ids) != g.n - 1 or len(set(self.edge_ids)) != len(self.edge_ids):
            return False
        if any(not 0 <= k < g.m for k in self.edge_ids):
            return False
        ds = DisjointSet(range(g.n))
        for k in self.edge_ids:
            u, v, _ = g.edges[k]
            if not ds.merge(u, v):
                return False
        return ds.n_subsets == 1


@dataclass(frozen=True)
class TreeCut:
    tree: SpanningTree
    disconnected_edge: int
    solution: Solution


def kruskal_tree(g: Graph, edge_order: Iterable[int]) -> SpanningTree:
    """Scan edges in order, keeping each one that joins two separate classes."""
    ds = DisjointSet(range(g.n))
    chosen: list[int] = []
    for k in edge_order:
        u, v, _ = g.edges[k]
        if ds.merge(u, v):
            chosen.append(int(k))
            if len(chosen) == g.n - 1:
                break
    if len(chosen) != g.n - 1:
        raise ValueError("edge order does not span the graph")
    return SpanningTree(g, tuple(chosen))


def _subtree_intervals(t: SpanningTree) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Root the tree at vertex 0.

    Returns entry times per vertex plus, per tree edge (in ``t.edge_ids``
    order), the [start, end) entry-time interval of its lower endpoint's
    subtree.
    """
    n = t.n
    adj = t.adjacency()
    tin = np.zeros(n, dtype=np.int64)
    size = np.ones(n, dtype=np.int64)
    child_of_edge: dict[int, int] = {}
    order: list[int] = []
    parent = [-1] * n
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        v = stack.pop()
        tin[v] = len(order)
        order.append(v)
        for w, eid in reversed(adj[v]):
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                child_of_edge[eid] = w
                stack.append(w)
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    child = np.array([child_of_edge[k] for k in t.edge_ids], dtype=np.int64)
    start = tin[child]
    return tin, start, start + size[child]


def tree_cut_values(g: Graph, t: SpanningTree) -> np.ndarray:
    """Crossing weight in ``g`` of the split made by deleting each tree edge."""
    if g.n < 2:
        return np.zeros(0)
    tin, start, end = _subtree_intervals(t)
    ta = tin[g.eu][None, :]
    tb = tin[g.ev][None, :]
    lo = start[:, None]
    hi = end[:, None]
    in_a = (lo <= ta) & (ta < hi)
    in_b = (lo <= tb) & (tb < hi)
    return ((in_a ^ in_b) * g.weights[None, :]).sum(axis=1)


def tree_cut_for_edge(g: Graph, t: SpanningTree, eid: int,
                      provenance: Provenance = Provenance.RANDOM_TREE) -> TreeCut:
    """The cut obtained by deleting tree edge ``eid``; vertex 0 keeps label 0."""
    skip = eid
    adj = t.adjacency()
    labels = [1] * g.n
    labels[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y, k in adj[x]:
            if k != skip and labels[y] == 1:
                labels[y] = 0
                queue.append(y)
    sol = make_solution(g, labels, provenance)
    assert sol.feasible, "tree split must be a minimal cut"
    return TreeCut(t, eid, sol)


def best_cut_of_tree(g: Graph, t: SpanningTree,
                     provenance: Provenance = Provenance.RANDOM_TREE) -> TreeCut:
    """Best of the n-1 tree-edge deletions; the earliest tree edge wins ties."""
    values = tree_cut_values(g, t)
    k = int(np.argmax(values))
    return tree_cut_for_edge(g, t, t.edge_ids[k], provenance)


def _bfs_tree_edges(g: Graph, side: Sequence[int]) -> list[int]:
    members = set(side)
    root = min(side)
    seen = {root}
    out: list[int] = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y, eid in g.adjacency[x]:
            if y in members and y not in seen:
                seen.add(y)
                out.append(eid)
                queue.append(y)
    return out


def crossing_tree_edge(g: Graph, assignment: Sequence[int]) -> int:
    """Heaviest crossing edge, lowest id on ties."""
    best = -1
    for k, (u, v, w) in enumerate(g.edges):
        if assignment[u] != assignment[v] and (best < 0 or w > g.edges[best][2]):
            best = k
    return best


def tree_from_cut(g: Graph, s: Solution | Sequence[int]) -> SpanningTree:
    """A spanning tree whose crossing edge reproduces the given feasible cut.

    The crossing edge comes first in ``edge_ids``, so it also wins any tie in
    :func:`best_cut_of_tree`.
    """
    labels = s.assignment if isinstance(s, Solution) else tuple(s)
    if not is_minimal_cut(g, labels):
        raise InfeasibleCut("cut is not two-sided connected")
    zero = [v for v in range(g.n) if labels[v] == 0]
    one = [v for v in range(g.n) if labels[v] == 1]
    ids = [crossing_tree_edge(g, labels)] + _bfs_tree_edges(g, zero) + _bfs_tree_edges(g, one)
    return SpanningTree(g, tuple(ids))
