"""Reference solvers: exhaustive search, random spanning trees, genetic search."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoCandidates, TooLarge
from .forest import best_cut_of_tree, kruskal_tree
from .graph import Graph, Provenance, Solution, is_minimal_cut, make_solution

BRUTE_FORCE_CAP = 22


def _bitmask_connected(bits: int, nbr: list[int]) -> bool:
    reach = frontier = bits & -bits
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= nbr[low.bit_length() - 1]
            f ^= low
        frontier = grow & bits & ~reach
        reach |= frontier
    return reach == bits


def brute_force(g: Graph, cap: int = BRUTE_FORCE_CAP) -> Solution:
    """Exact maximum minimal cut by exhaustive enumeration.

    All 2^(n-1) - 1 bipartitions (the last vertex pinned to label 0) are
    scored at once with numpy, then visited in decreasing value until the
    first two-sided connected one; near-ties are rescored exactly.
    """
    n = g.n
    if n > cap:
        raise TooLarge(f"n={n} exceeds brute-force cap {cap}")
    if n < 2:
        raise NoCandidates("a single vertex has no cut")
    masks = np.arange(1, 1 << (n - 1), dtype=np.int64)
    values = np.zeros(masks.size)
    for (u, v, w) in g.edges:
        values += w * (((masks >> u) ^ (masks >> v)) & 1)
    order = np.lexsort((masks, -values))
    nbr = [0] * n
    for u, v, _ in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    full = (1 << n) - 1

    best_mask = None
    best_exact = -math.inf
    floor = None
    for idx in order.tolist():
        approx = values[idx]
        if floor is not None and approx < floor:
            break
        mask = int(masks[idx])
        if not (_bitmask_connected(mask, nbr) and _bitmask_connected(full ^ mask, nbr)):
            continue
        labels = [(mask >> i) & 1 for i in range(n)]
        exact = math.fsum(w for u, v, w in g.edges if labels[u] != labels[v])
        if exact > best_exact:
            best_exact, best_mask = exact, labels
        if floor is None:
            floor = approx - 1e-9 * max(1.0, abs(approx))
    assert best_mask is not None, "a connected graph always has a minimal cut"
    return make_solution(g, best_mask, Provenance.BRUTE_FORCE)


def random_tree_search(g: Graph, max_iter: int = 500, seed: int = 0) -> Solution:
    """Best tree-edge cut over ``max_iter`` Kruskal trees built on shuffled edges."""
    if g.n < 2:
        raise NoCandidates("a single vertex has no cut")
    rng = np.random.default_rng(seed)
    order = np.argsort(g.weights, kind="stable")
    best: Solution | None = None
    for _ in range(max(1, max_iter)):
        rng.shuffle(order)
        tc = best_cut_of_tree(g, kruskal_tree(g, order.tolist()))
        if best is None or tc.solution.cut_value > best.cut_value:
            best = tc.solution
    return best


@dataclass(frozen=True)
class GeneticConfig:
    max_iter: int = 100
    population_size: int = 50
    crossover_rate: float = 0.8
    mutation_rate: float = 0.02
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if not (0 <= self.crossover_rate <= 1 and 0 <= self.mutation_rate <= 1):
            raise ValueError("rates must lie in [0, 1]")


def _fitness(g: Graph, chrom: np.ndarray) -> float:
    if not is_minimal_cut(g, chrom):
        return 0.0
    return float(np.sum(g.weights[chrom[g.eu] != chrom[g.ev]]))


def genetic(g: Graph, cfg: GeneticConfig = GeneticConfig()) -> Solution:
    """Genetic search over label vectors; infeasible chromosomes score zero.

    Parents are drawn by linear ranking, recombined with single-point
    crossover, mutated by independent bit flips; the best chromosome is
    carried over unchanged each generation. Returns an infeasible all-zero
    assignment when no valid chromosome was ever seen.
    """
    n = g.n
    size = cfg.population_size
    rng = np.random.default_rng(cfg.seed)
    pop = rng.integers(0, 2, size=(size, n))
    fit = np.array([_fitness(g, c) for c in pop])
    rank_weights = np.arange(1, size + 1, dtype=float)
    rank_weights /= rank_weights.sum()

    best_i = int(np.argmax(fit))
    best_fit, best_chrom = fit[best_i], pop[best_i].copy()
    for _ in range(cfg.max_iter):
        probs = np.empty(size)
        probs[np.argsort(fit, kind="stable")] = rank_weights
        children = [pop[int(np.argmax(fit))].copy()]
        while len(children) < size:
            i, j = rng.choice(size, size=2, p=probs)
            child = pop[i].copy()
            if n > 1 and rng.random() < cfg.crossover_rate:
                point = int(rng.integers(1, n))
                child[point:] = pop[j][point:]
            child ^= (rng.random(n) < cfg.mutation_rate).astype(child.dtype)
            children.append(child)
        pop = np.array(children)
        fit = np.array([_fitness(g, c) for c in pop])
        i = int(np.argmax(fit))
        if fit[i] > best_fit:
            best_fit, best_chrom = fit[i], pop[i].copy()

    if best_fit <= 0:
        return make_solution(g, [0] * n, Provenance.GENETIC)
    return make_solution(g, best_chrom, Provenance.GENETIC)
