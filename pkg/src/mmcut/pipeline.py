"""End-to-end solver: split on bridges, solve each piece, keep the best cut.

Small pieces are solved exactly. Larger ones are relaxed, rounded and handed
to the tree local search as a starting tree.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from .baselines import BRUTE_FORCE_CAP, brute_force, random_tree_search
from .decompose import Component, bridge_ids, combine, decompose
from .errors import InfeasibleShape, MMCutError
from .forest import SpanningTree, best_cut_of_tree, kruskal_tree, tree_from_cut
from .graph import Graph, Provenance, Solution, build_graph
from .heuristic import HeuristicConfig, improve
from .relax import RelaxConfig, solve_relax

log = logging.getLogger(__name__)

GENERATION_ATTEMPTS = 1000
ZERO_WEIGHT_FLOOR = 1e-6


@dataclass(frozen=True)
class PipelineConfig:
    small_threshold: int = 16
    relax: RelaxConfig = field(default_factory=RelaxConfig)
    heuristic: HeuristicConfig = field(default_factory=HeuristicConfig)
    skip_relax: bool = False
    skip_heuristic: bool = False

    def __post_init__(self):
        if self.small_threshold < 2:
            raise ValueError("small_threshold must be >= 2")
        if self.small_threshold > BRUTE_FORCE_CAP:
            raise ValueError(f"small_threshold must be <= {BRUTE_FORCE_CAP}")


def _random_tree(g: Graph, seed: int) -> SpanningTree:
    order = np.random.default_rng(seed).permutation(g.m)
    return kruskal_tree(g, order.tolist())


def _solve_large(g: Graph, cfg: PipelineConfig) -> Solution:
    start: SpanningTree | None = None
    relaxed: Solution | None = None
    if not cfg.skip_relax:
        try:
            relaxed, _ = solve_relax(g, cfg.relax)
            start = tree_from_cut(g, relaxed)
        except MMCutError as exc:
            log.info("relaxation gave no feasible cut (%s); starting from a random tree", exc)
            relaxed = None
    if start is None:
        start = _random_tree(g, cfg.heuristic.seed)
    if cfg.skip_heuristic:
        if relaxed is not None:
            return relaxed
        return best_cut_of_tree(g, start, Provenance.HEURISTIC).solution
    return improve(g, start, cfg.heuristic)


def solve_component(g: Graph, cfg: PipelineConfig) -> Solution:
    """Solve one bridgeless piece; any solver failure falls back to random trees."""
    try:
        if g.n <= cfg.small_threshold:
            return brute_force(g)
        return _solve_large(g, cfg)
    except MMCutError as exc:
        log.warning("component solver failed (%s); using random tree search", exc)
        return random_tree_search(g, seed=cfg.heuristic.seed)


def solve_by_parts(g: Graph, parts: tuple[Component, ...], bridges, cfg: PipelineConfig) -> Solution:
    sols = [(solve_component(c.graph, cfg), c.vertex_map) for c in parts]
    return combine(bridges, sols, g)


def pioneer(g: Graph, cfg: PipelineConfig = PipelineConfig()) -> Solution:
    """Best minimal cut found by decomposition, exact search and relaxation plus local search."""
    d = decompose(g)
    return solve_by_parts(g, d.components, d.bridges, cfg)


def digit_weight(a: int, b: int) -> float:
    """Edge weight a + b + a*b for vertex digits a and b, floored to stay positive."""
    return max(float(a + b + a * b), ZERO_WEIGHT_FLOOR)


def _cycle_plus_chords(n: int, m: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """A random Hamiltonian cycle plus m - n distinct random chords; always bridgeless."""
    order = rng.permutation(n).tolist()
    pairs = {tuple(sorted((order[i], order[(i + 1) % n]))) for i in range(n)}
    iu, ju = np.triu_indices(n, k=1)
    rest = [k for k in range(iu.size) if (int(iu[k]), int(ju[k])) not in pairs]
    for k in rng.choice(len(rest), size=m - n, replace=False).tolist():
        pairs.add((int(iu[rest[k]]), int(ju[rest[k]])))
    return sorted(pairs)


def generate_synthetic(n: int, m: int, seed: int) -> Graph:
    """Random connected bridgeless graph with digit-derived edge weights.

    Each vertex draws a digit d in 0..9 and edge (i, j) weighs
    d_i + d_j + d_i * d_j (floored at a tiny positive value). The edge set is
    drawn uniformly among m-edge graphs and redrawn until it is connected and
    bridgeless. Sparse shapes rarely pass, so after ``GENERATION_ATTEMPTS``
    draws the edge set becomes a random Hamiltonian cycle plus random chords.
    """
    if n < 3 or m < n or m > n * (n - 1) // 2:
        raise InfeasibleShape(f"no connected bridgeless simple graph with n={n}, m={m}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    digits = rng.integers(0, 10, size=n).tolist()

    def weighted(pairs):
        return [(u, v, digit_weight(digits[u], digits[v])) for u, v in pairs]

    for _ in range(GENERATION_ATTEMPTS):
        pick = np.sort(rng.choice(iu.size, size=m, replace=False))
        us, vs = iu[pick], ju[pick]
        if np.bincount(np.concatenate([us, vs]), minlength=n).min() < 2:
            continue
        try:
            g = build_graph(n, weighted(zip(us.tolist(), vs.tolist())))
        except MMCutError:
            continue
        if not bridge_ids(g):
            return g
    log.info("n=%d, m=%d: no bridgeless draw in %d attempts, using cycle plus chords",
             n, m, GENERATION_ATTEMPTS)
    return build_graph(n, weighted(_cycle_plus_chords(n, m, rng)))


def with_seed(cfg: PipelineConfig, seed: int) -> PipelineConfig:
    """Same configuration with every stochastic stage reseeded."""
    return replace(cfg, relax=replace(cfg.relax, seed=seed), heuristic=replace(cfg.heuristic, seed=seed))
