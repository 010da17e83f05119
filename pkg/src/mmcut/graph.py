"""Graph representation, cut evaluation and connectivity helpers."""
from __future__ import annotations

import enum
import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DisconnectedInput, EmptyGraph, InvalidEdge, NonpositiveWeight

log = logging.getLogger(__name__)

Edge = tuple[int, int, float]


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected, weighted, simple and connected graph on vertices ``0..n-1``.

    Edges are stored with ``u < v``; an edge id is its position in ``edges``.
    Use :func:`build_graph` to construct one from raw input.
    """

    n: int
    edges: tuple[Edge, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def eu(self) -> np.ndarray:
        return np.array([e[0] for e in self.edges], dtype=np.int64)

    @cached_property
    def ev(self) -> np.ndarray:
        return np.array([e[1] for e in self.edges], dtype=np.int64)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([e[2] for e in self.edges], dtype=float)

    @cached_property
    def total_weight(self) -> float:
        return math.fsum(e[2] for e in self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex: ``(neighbor, edge_id)`` pairs in edge-id order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for k, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, k))
            adj[v].append((u, k))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def edge_ids(self) -> dict[tuple[int, int], int]:
        return {(u, v): k for k, (u, v, _) in enumerate(self.edges)}

    @cached_property
    def structure(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix."""
        a = np.zeros((self.n, self.n))
        a[self.eu, self.ev] = 1.0
        a[self.ev, self.eu] = 1.0
        return a

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        a[self.eu, self.ev] = self.weights
        a[self.ev, self.eu] = self.weights
        return a

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_ids[(u, v) if u < v else (v, u)]

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adjacency[v]]

    def subgraph(self, vertices: Sequence[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``vertices`` (relabelled in ascending order).

        Returns the subgraph and the map from local to parent index. The
        induced subgraph must be connected.
        """
        vmap = tuple(sorted(vertices))
        local = {v: i for i, v in enumerate(vmap)}
        edges = []
        for u, v, w in self.edges:
            if u in local and v in local:
                edges.append((local[u], local[v], w))
        return build_graph(len(vmap), edges), vmap

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edge_list: Iterable[Sequence]) -> Graph:
    """Validate and normalise an edge list into a :class:`Graph`.

    Self-loops and repeated vertex pairs are dropped (first occurrence wins).
    Entries may be ``(u, v)`` or ``(u, v, w)``; a missing weight means 1.0.
    """
    if n < 1:
        raise EmptyGraph("graph needs at least one vertex")
    seen: set[tuple[int, int]] = set()
    edges: list[Edge] = []
    for item in edge_list:
        if len(item) == 2:
            u, v = item
            w = 1.0
        elif len(item) == 3:
            u, v, w = item
        else:
            raise InvalidEdge(f"edge must be (u, v) or (u, v, w), got {item!r}")
        u, v, w = int(u), int(v), float(w)
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) out of range for n={n}")
        if not w > 0 or not math.isfinite(w):
            raise NonpositiveWeight(f"edge ({u}, {v}) has weight {w}")
        if u == v:
            log.warning("dropping self-loop on vertex %d", u)
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            log.warning("dropping duplicate edge %s", key)
            continue
        seen.add(key)
        edges.append((key[0], key[1], w))
    g = Graph(n, tuple(edges))
    count, _ = connected_components(g, range(n))
    if count != 1:
        raise DisconnectedInput(f"input has {count} connected components")
    return g


class Provenance(str, enum.Enum):
    BRUTE_FORCE = "BruteForce"
    RANDOM_TREE = "RandomTree"
    RELAXATION = "Relaxation"
    HEURISTIC = "Heuristic"
    GENETIC = "Genetic"
    BRIDGE = "Bridge"


@dataclass(frozen=True)
class Solution:
    assignment: tuple[int, ...]
    cut_value: float
    feasible: bool
    provenance: Provenance

    def complement(self) -> "Solution":
        return Solution(tuple(1 - x for x in self.assignment), self.cut_value,
                        self.feasible, self.provenance)

    def sides(self) -> tuple[list[int], list[int]]:
        zero = [i for i, x in enumerate(self.assignment) if x == 0]
        one = [i for i, x in enumerate(self.assignment) if x == 1]
        return zero, one


def _labels(g: Graph, a: Sequence[int]) -> np.ndarray:
    labels = np.asarray(a, dtype=np.int64)
    if labels.shape != (g.n,):
        raise ValueError(f"assignment has length {labels.size}, graph has {g.n} vertices")
    if np.any((labels != 0) & (labels != 1)):
        raise ValueError("assignment entries must be 0 or 1")
    return labels


def crossing_mask(g: Graph, a: Sequence[int]) -> np.ndarray:
    labels = _labels(g, a)
    return labels[g.eu] != labels[g.ev]


def cut_value(g: Graph, a: Sequence[int]) -> float:
    """Total weight of edges whose endpoints carry different labels.

    Summed with ``math.fsum`` so the value depends only on the set of
    crossing edges, not on evaluation order.
    """
    return math.fsum(g.weights[crossing_mask(g, a)].tolist())


def connected_components(g: Graph, subset: Iterable[int]) -> tuple[int, np.ndarray]:
    """Components of the subgraph induced by ``subset``.

    Returns the component count and an array of component ids, ``-1`` for
    vertices outside the subset.
    """
    comp = np.full(g.n, -1, dtype=np.int64)
    inside = np.zeros(g.n, dtype=bool)
    members = list(subset)
    inside[members] = True
    count = 0
    for s in members:
        if comp[s] >= 0:
            continue
        comp[s] = count
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, _ in g.adjacency[x]:
                if inside[y] and comp[y] < 0:
                    comp[y] = count
                    queue.append(y)
        count += 1
    return count, comp


def is_minimal_cut(g: Graph, a: Sequence[int]) -> bool:
    """True when both label classes are nonempty and induce connected subgraphs."""
    labels = _labels(g, a)
    for side in (0, 1):
        members = np.flatnonzero(labels == side)
        if members.size == 0:
            return False
        count, _ = connected_components(g, members.tolist())
        if count != 1:
            return False
    return True


def make_solution(g: Graph, a: Sequence[int], provenance: Provenance) -> Solution:
    """Wrap an assignment, recomputing its cut value and feasibility."""
    labels = tuple(int(x) for x in _labels(g, a))
    return Solution(labels, cut_value(g, labels), is_minimal_cut(g, labels), provenance)


def complement(a: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 - int(x) for x in a)
