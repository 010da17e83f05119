import numpy as np
import pytest

from conftest import barbell, random_connected, star
from mmcut.baselines import brute_force
from mmcut.decompose import bridge_ids, decompose
from mmcut.errors import InfeasibleShape
from mmcut.graph import cut_value, is_minimal_cut
from mmcut.pipeline import PipelineConfig, digit_weight, generate_synthetic, pioneer, solve_by_parts, with_seed
from mmcut.relax import RelaxConfig


def test_pioneer_examples():
    assert pioneer(barbell()).cut_value == 2
    assert pioneer(star(3)).cut_value == 1


def test_small_graphs_route_to_brute_force():
    rng = np.random.default_rng(41)
    for _ in range(30):
        g = random_connected(rng, int(rng.integers(2, 14)))
        assert pioneer(g).cut_value == brute_force(g).cut_value


def test_large_components_use_relaxation_and_search():
    g = generate_synthetic(20, 40, seed=1)
    for cfg in (PipelineConfig(), PipelineConfig(skip_relax=True), PipelineConfig(skip_heuristic=True),
                PipelineConfig(small_threshold=5, relax=RelaxConfig(max_iters=30, restarts=1))):
        s = pioneer(g, cfg)
        assert s.feasible and is_minimal_cut(g, s.assignment)
        assert s.cut_value == cut_value(g, s.assignment)


def test_pioneer_matches_manual_decomposition():
    rng = np.random.default_rng(42)
    cfg = PipelineConfig(small_threshold=4, relax=RelaxConfig(max_iters=40, restarts=1))
    for _ in range(5):
        g = random_connected(rng, 14, 0.15)
        d = decompose(g)
        assert pioneer(g, cfg) == solve_by_parts(g, d.components, d.bridges, cfg)


def test_with_seed_reseeds_every_stage():
    cfg = with_seed(PipelineConfig(), 7)
    assert cfg.relax.seed == 7 and cfg.heuristic.seed == 7


def test_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig(small_threshold=1)


def test_generated_graph_shape():
    g = generate_synthetic(36, 60, seed=3)
    assert g.n == 36 and g.m == 60 and not bridge_ids(g)
    allowed = {digit_weight(a, b) for a in range(10) for b in range(10)}
    assert all(w in allowed for _, _, w in g.edges)


def test_digit_weight():
    assert digit_weight(3, 4) == 19
    assert digit_weight(0, 0) == 1e-6
    assert digit_weight(9, 9) == 99


def test_generation_is_deterministic():
    a, b = generate_synthetic(20, 40, 5), generate_synthetic(20, 40, 5)
    assert a.edges == b.edges


def test_impossible_shapes():
    with pytest.raises(InfeasibleShape):
        generate_synthetic(10, 9, 0)
    with pytest.raises(InfeasibleShape):
        generate_synthetic(5, 11, 0)


def test_sparse_shapes_always_generate():
    for seed in range(10):
        g = generate_synthetic(36, 36, seed)
        assert g.m == 36 and not bridge_ids(g)
    for seed in range(5):
        g = generate_synthetic(36, 60, seed)
        assert g.m == 60 and not bridge_ids(g)
