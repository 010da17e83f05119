"""Bridge detection and splitting a graph into 2-edge-connected components."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import NoCandidates
from .graph import Edge, Graph, Provenance, Solution, connected_components, make_solution


@dataclass(frozen=True)
class Component:
    graph: Graph
    vertex_map: tuple[int, ...]  # component index -> parent index


@dataclass(frozen=True)
class Decomposition:
    bridges: tuple[Edge, ...]
    components: tuple[Component, ...]
    singleton_count: int


def bridge_ids(g: Graph) -> list[int]:
    """Edge ids of all bridges, via an iterative low-link DFS."""
    disc = [-1] * g.n
    low = [0] * g.n
    found: list[int] = []
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frames: (vertex, edge id used to enter it, next adjacency position)
        stack = [(root, -1, 0)]
        while stack:
            v, via, pos = stack[-1]
            adj = g.adjacency[v]
            if pos < len(adj):
                stack[-1] = (v, via, pos + 1)
                w, eid = adj[pos]
                if eid == via:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, 0))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        found.append(via)
    return sorted(found)


def find_bridges(g: Graph) -> list[Edge]:
    return [g.edges[k] for k in bridge_ids(g)]


def decompose(g: Graph) -> Decomposition:
    """Remove every bridge; the non-trivial leftover pieces are 2-edge-connected."""
    bids = set(bridge_ids(g))
    reduced = Graph(g.n, tuple(e for k, e in enumerate(g.edges) if k not in bids))
    count, comp = connected_components(reduced, range(g.n))
    groups: list[list[int]] = [[] for _ in range(count)]
    for v in range(g.n):
        groups[comp[v]].append(v)
    components = []
    singletons = 0
    for members in groups:
        if len(members) == 1:
            singletons += 1
            continue
        sub, vmap = g.subgraph(members)
        components.append(Component(sub, vmap))
    return Decomposition(tuple(g.edges[k] for k in sorted(bids)), tuple(components), singletons)


def bridge_split(g: Graph, bridge: Edge) -> tuple[int, ...]:
    """Assignment putting the two sides of ``bridge`` on different labels."""
    u, v, _ = bridge
    skip = g.edge_id(u, v)
    labels = [1] * g.n
    labels[u] = 0
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y, eid in g.adjacency[x]:
            if eid != skip and labels[y] == 1:
                labels[y] = 0
                queue.append(y)
    return tuple(labels)


def lift(g: Graph, labels: Sequence[int], vertex_map: Sequence[int]) -> tuple[int, ...]:
    """Extend a component assignment to all of ``g``.

    Every vertex outside the component hangs off exactly one attachment
    vertex through bridges, and inherits that vertex's label.
    """
    full = [-1] * g.n
    inside = set(vertex_map)
    queue = deque()
    for local, parent in enumerate(vertex_map):
        full[parent] = int(labels[local])
        queue.append(parent)
    while queue:
        x = queue.popleft()
        for y, _ in g.adjacency[x]:
            if full[y] < 0 and y not in inside:
                full[y] = full[x]
                queue.append(y)
    return tuple(full)


def combine(bridges: Sequence[Edge],
            component_solutions: Sequence[tuple[Solution, Sequence[int]]],
            g: Graph) -> Solution:
    """Best of every single-bridge cut and every lifted component solution.

    Ties go to the earliest component solution; a bridge only wins when it is
    strictly better. Infeasible component solutions are only returned when no
    feasible candidate exists at all.
    """
    best: Solution | None = None
    fallback: Solution | None = None
    for sol, vmap in component_solutions:
        lifted = make_solution(g, lift(g, sol.assignment, vmap), sol.provenance)
        if not sol.feasible or not lifted.feasible:
            if fallback is None or lifted.cut_value > fallback.cut_value:
                fallback = lifted
            continue
        if best is None or lifted.cut_value > best.cut_value:
            best = lifted
    for bridge in bridges:
        cand = make_solution(g, bridge_split(g, bridge), Provenance.BRIDGE)
        if best is None or cand.cut_value > best.cut_value:
            best = cand
    if best is None:
        if fallback is not None:
            return fallback
        raise NoCandidates("graph has no cut candidates")
    return best
