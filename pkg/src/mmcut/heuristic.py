"""Local search that grows one side of a tree cut one vertex at a time.

Each round takes the best cut of the current spanning tree, tries moving a
neighbouring vertex across the cut, rebuilds a spanning tree that carries the
new split, and keeps the move whose new tree has the best cut. Cuts already
visited are not revisited, and a bounded number of non-improving moves is
allowed before the search stops. A final pass drops vertices from the smaller
side while that pays off.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .errors import MontageFailure
from .forest import SpanningTree, TreeCut, best_cut_of_tree
from .graph import Graph, Provenance, Solution, connected_components, make_solution

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeuristicConfig:
    max_rounds: int = 1000
    improvement_rule: str = "best"  # "best": try every candidate, "first": stop at first gain
    seed: int = 0
    patience: int = 15  # non-improving rounds tolerated; 0 stops at the first local optimum
    grow: str = "both"  # "smaller": only the smaller side takes vertices

    def __post_init__(self):
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")
        if self.patience < 0:
            raise ValueError("patience must be >= 0")
        if self.grow not in ("both", "smaller"):
            raise ValueError(f"unknown grow mode {self.grow!r}")
        if self.improvement_rule not in ("best", "first"):
            raise ValueError(f"unknown improvement_rule {self.improvement_rule!r}")


def smaller_side(assignment: Sequence[int]) -> tuple[list[int], list[int]]:
    """(V1, V2) with |V1| <= |V2|; on equal sizes V1 holds vertex 0."""
    a = [v for v, x in enumerate(assignment) if x == assignment[0]]
    b = [v for v, x in enumerate(assignment) if x != assignment[0]]
    return (a, b) if len(a) <= len(b) else (b, a)


def select_candidates(g: Graph, cut: TreeCut, both: bool = False) -> list[tuple[int, int]]:
    """Pairs (p, q) with (p, q) a crossing edge; q is the vertex to move next to p.

    p runs over the smaller side, then (with ``both``) over the larger one.
    """
    v1, v2 = smaller_side(cut.solution.assignment)
    out = []
    for grow in (v1, v2) if both else (v1,):
        inside = set(grow)
        out.extend((p, q) for p in grow for q in g.neighbors(p) if q not in inside)
    return out


def _span(g: Graph, vertices: set[int], preferred: Iterable[int]) -> list[int]:
    """Spanning tree edge ids of the induced subgraph, trying ``preferred`` first."""
    ds = DisjointSet(vertices)
    chosen: list[int] = []
    tried = set()

    def offer(k: int) -> None:
        u, v, _ = g.edges[k]
        if u in vertices and v in vertices and ds.merge(u, v):
            chosen.append(k)

    for k in preferred:
        tried.add(k)
        offer(k)
    for k in range(g.m):
        if len(chosen) == len(vertices) - 1:
            break
        if k not in tried:
            offer(k)
    return chosen


def transform_add_vertex(g: Graph, t: SpanningTree, cut: TreeCut, p: int, q: int) -> SpanningTree:
    """Rebuild ``t`` so that one of its cuts moves ``q`` onto ``p``'s side.

    ``q`` is detached from its own side. If that splits the rest of that
    side, every piece except the largest travels with ``q`` (an
    isolated neighbour is the simplest such piece). The grown side is spanned
    from ``t``'s edges plus (p, q); the remainder gets its own spanning tree;
    the two are joined by the heaviest edge of ``t`` crossing the new split,
    which is listed first in the returned tree.
    """
    a = cut.solution.assignment
    if a[p] == a[q]:
        raise MontageFailure(f"({p}, {q}) does not cross the cut")
    rest = [v for v in range(g.n) if a[v] == a[q] and v != q]
    if not rest:
        raise MontageFailure(f"moving {q} would empty its side")
    count, comp = connected_components(g, rest)
    if count > 1:
        sizes = [0] * count
        for v in rest:
            sizes[comp[v]] += 1
        keep = max(range(count), key=lambda c: (sizes[c], -min(v for v in rest if comp[v] == c)))
        kept = {v for v in rest if comp[v] == keep}
    else:
        kept = set(rest)
    grown = set(range(g.n)) - kept

    montage = None
    for k in t.edge_ids:
        u, v, w = g.edges[k]
        if (u in grown) != (v in grown) and (montage is None or w > g.edges[montage][2]):
            montage = k
    if montage is None:
        raise MontageFailure(f"no edge of the current tree crosses the split after moving {q}")

    link = g.edge_id(p, q)
    grown_tree = _span(g, grown, [k for k in t.edge_ids if k != montage] + [link])
    kept_tree = _span(g, kept, [k for k in t.edge_ids if k != montage])
    if len(grown_tree) != len(grown) - 1 or len(kept_tree) != len(kept) - 1:
        raise MontageFailure("rebuilt side is not connected")
    return SpanningTree(g, (montage, *grown_tree, *kept_tree))


def dislodge(g: Graph, s: Solution) -> Solution:
    """Move vertices off the smaller side while each move strictly raises the cut.

    A vertex may move only if it touches the other side and the smaller side
    stays connected and nonempty without it. Sweeps in vertex order and
    restarts after every move.
    """
    labels = list(s.assignment)
    adj = g.adjacency
    moved = True
    while moved:
        moved = False
        v1, _ = smaller_side(labels)
        if len(v1) < 2:
            break
        side = labels[v1[0]]
        for v in v1:
            same = [g.edges[k][2] for y, k in adj[v] if labels[y] == side]
            other = [g.edges[k][2] for y, k in adj[v] if labels[y] != side]
            if not other or not math.fsum(same) > math.fsum(other):
                continue
            remaining = [x for x in v1 if x != v]
            if connected_components(g, remaining)[0] != 1:
                continue
            labels[v] = 1 - side
            moved = True
            break
    if labels == list(s.assignment):
        return s
    return make_solution(g, labels, s.provenance)


def improve(g: Graph, t0: SpanningTree, cfg: HeuristicConfig = HeuristicConfig(),
            trace: list[TreeCut] | None = None) -> Solution:
    """Grow-and-rebuild search from ``t0``; never worse than ``t0``'s best cut.

    Every round moves to the best rebuilt tree cut not seen before, even when
    it is worse, and stops after ``cfg.patience`` consecutive rounds without a
    new best. ``trace`` receives every accepted tree cut in order.
    """
    cur = best_cut_of_tree(g, t0, Provenance.HEURISTIC)
    if trace is not None:
        trace.append(cur)
    best = cur.solution
    visited = {cur.solution.assignment}
    tol = 1e-12 * max(1.0, g.total_weight)
    stall = 0
    for _ in range(cfg.max_rounds):
        chosen: TreeCut | None = None
        for p, q in select_candidates(g, cur, cfg.grow == "both"):
            try:
                tree = transform_add_vertex(g, cur.tree, cur, p, q)
            except MontageFailure as exc:
                log.debug("skipping candidate (%d, %d): %s", p, q, exc)
                continue
            tc = best_cut_of_tree(g, tree, Provenance.HEURISTIC)
            if tc.solution.assignment in visited:
                continue
            if chosen is None or tc.solution.cut_value > chosen.solution.cut_value:
                chosen = tc
                if cfg.improvement_rule == "first" and chosen.solution.cut_value > best.cut_value + tol:
                    break
        if chosen is None:
            break
        if chosen.solution.cut_value > best.cut_value + tol:
            stall = 0
        else:
            stall += 1
            if stall > cfg.patience:
                break
        cur = chosen
        visited.add(cur.solution.assignment)
        if trace is not None:
            trace.append(cur)
        if cur.solution.cut_value > best.cut_value + tol:
            best = cur.solution
    return dislodge(g, best)
