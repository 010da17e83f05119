"""Maximum minimal cut: exact, tree-based, spectral-relaxation and hybrid solvers."""
from .baselines import GeneticConfig, brute_force, genetic, random_tree_search
from .decompose import combine, decompose, find_bridges
from .forest import SpanningTree, best_cut_of_tree, kruskal_tree, tree_from_cut
from .graph import Graph, Provenance, Solution, build_graph, cut_value, is_minimal_cut
from .heuristic import HeuristicConfig, improve
from .pipeline import PipelineConfig, generate_synthetic, pioneer
from .relax import RelaxConfig, constraint_prior_round, deterministic_round, optimize, solve_relax

__all__ = [
    "GeneticConfig", "brute_force", "genetic", "random_tree_search",
    "combine", "decompose", "find_bridges",
    "SpanningTree", "best_cut_of_tree", "kruskal_tree", "tree_from_cut",
    "Graph", "Provenance", "Solution", "build_graph", "cut_value", "is_minimal_cut",
    "HeuristicConfig", "improve",
    "PipelineConfig", "generate_synthetic", "pioneer",
    "RelaxConfig", "constraint_prior_round", "deterministic_round", "optimize", "solve_relax",
]
