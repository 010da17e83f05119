"""Run a solver over a directory of edge-list files and summarise the results."""
from __future__ import annotations

import logging
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .baselines import GeneticConfig, brute_force, genetic, random_tree_search
from .errors import MMCutError
from .forest import kruskal_tree
from .graph import Graph, Solution
from .heuristic import improve
from .io import load_edge_list
from .pipeline import PipelineConfig, pioneer, with_seed
from .relax import deterministic_round, optimize, solve_relax

log = logging.getLogger(__name__)

SOLVERS = ("pioneer", "random-tree", "ga", "brute", "relax-only", "heuristic-only")


@dataclass(frozen=True)
class BenchSettings:
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    iters: int = 500  # random-tree rounds and genetic generations
    seed: int = 0
    reps: int = 5
    timing: bool = True


def _relax_only(g: Graph, cfg: PipelineConfig) -> Solution:
    state = optimize(g, cfg.relax)
    sol, _ = deterministic_round(g, state, cfg.relax)
    return sol


def _heuristic_only(g: Graph, cfg: PipelineConfig) -> Solution:
    order = np.random.default_rng(cfg.heuristic.seed).permutation(g.m)
    return improve(g, kruskal_tree(g, order.tolist()), cfg.heuristic)


def run_solver(name: str, g: Graph, seed: int, settings: BenchSettings) -> Solution:
    cfg = with_seed(settings.pipeline, seed)
    table: dict[str, Callable[[], Solution]] = {
        "pioneer": lambda: pioneer(g, cfg),
        "random-tree": lambda: random_tree_search(g, settings.iters, seed),
        "ga": lambda: genetic(g, GeneticConfig(max_iter=settings.iters, seed=seed)),
        "brute": lambda: brute_force(g),
        "relax-only": lambda: _relax_only(g, cfg),
        "relax": lambda: solve_relax(g, cfg.relax)[0],  # rounding plus repair
        "heuristic-only": lambda: _heuristic_only(g, cfg),
    }
    if name not in table:
        raise ValueError(f"unknown solver {name!r}; choose from {', '.join(table)}")
    return table[name]()


@dataclass(frozen=True)
class BenchRecord:
    graph_id: str
    rep: int
    seed: int
    cut_value: float
    feasible: bool
    seconds: float | None
    error: str | None = None


@dataclass(frozen=True)
class BenchReport:
    solver: str
    records: tuple[BenchRecord, ...]
    mean: float
    stddev: float
    seconds_per_graph: float | None
    violation_rate: float

    @classmethod
    def from_records(cls, solver: str, records: list[BenchRecord]) -> "BenchReport":
        """Aggregates: mean and stddev over repetitions of each repetition's mean value."""
        reps = sorted({r.rep for r in records})
        run_means = [statistics.fmean(r.cut_value for r in records if r.rep == k) for k in reps]
        mean = statistics.fmean(run_means) if run_means else 0.0
        stddev = statistics.pstdev(run_means) if len(run_means) > 1 else 0.0
        secs = [r.seconds for r in records if r.seconds is not None]
        spg = statistics.fmean(secs) if secs and len(secs) == len(records) else None
        violation = sum(not r.feasible for r in records) / len(records) if records else 0.0
        return cls(solver, tuple(records), mean, stddev, spg, violation)

    def summary(self) -> dict:
        return {"solver": self.solver, "graphs": len({r.graph_id for r in self.records}),
                "runs": len(self.records), "mean": self.mean, "stddev": self.stddev,
                "seconds_per_graph": self.seconds_per_graph, "violation_rate": self.violation_rate}


def _timed(gid: str, rep: int, seed: int, settings: BenchSettings,
           solve: Callable[[], Solution]) -> BenchRecord:
    start = time.perf_counter()
    try:
        sol = solve()
    except MMCutError as exc:
        log.warning("%s rep %d failed: %s", gid, rep, exc)
        return BenchRecord(gid, rep, seed, 0.0, False, None, f"{type(exc).__name__}: {exc}")
    secs = time.perf_counter() - start if settings.timing else None
    return BenchRecord(gid, rep, seed, sol.cut_value, sol.feasible, secs)


def _one(task: tuple[str, str, int, int, BenchSettings]) -> BenchRecord:
    path, solver, rep, seed, settings = task
    return _timed(Path(path).stem, rep, seed, settings,
                  lambda: run_solver(solver, load_edge_list(path), seed, settings))


def bench(input_dir: str | Path, settings: BenchSettings = BenchSettings(), solver: str = "pioneer",
          workers: int = 1) -> BenchReport:
    """Solve every ``*.txt`` file under ``input_dir`` ``settings.reps`` times with seeds seed, seed+1, ..."""
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}; choose from {', '.join(SOLVERS)}")
    paths = sorted(str(p) for p in Path(input_dir).glob("*.txt"))
    tasks = [(p, solver, r, settings.seed + r, settings) for r in range(settings.reps) for p in paths]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_one, tasks))
    else:
        records = [_one(t) for t in tasks]
    return BenchReport.from_records(solver, records)


def bench_graphs(graphs: list[tuple[str, Graph]], solver: str, settings: BenchSettings) -> BenchReport:
    """In-memory variant of :func:`bench` for already loaded graphs."""
    records = [
        _timed(gid, r, settings.seed + r, settings,
               lambda g=g, r=r: run_solver(solver, g, settings.seed + r, settings))
        for r in range(settings.reps) for gid, g in graphs
    ]
    return BenchReport.from_records(solver, records)
