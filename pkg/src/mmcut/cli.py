"""Command-line entry point: ``mmcut <command> [options]``.

Exit status is 0 on success, 1 when a solver returns an infeasible cut, and
2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import replace
from pathlib import Path

from .bench import SOLVERS, BenchSettings, bench, run_solver
from .decompose import decompose
from .errors import InputError, MMCutError
from .io import load_edge_list, make_record, save_edge_list, write_records
from .pipeline import PipelineConfig, generate_synthetic
from .relax import RelaxConfig

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT = 0, 1, 2

SOLVE_COMMANDS = {
    "solve": "pioneer",
    "brute": "brute",
    "random-tree": "random-tree",
    "ga": "ga",
    "relax": "relax",
    "heuristic": "heuristic-only",
}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", choices=("ratio", "unit"), default="ratio",
                   help="weight of the cut term: m/n or 1")
    p.add_argument("--epsilon", type=float, default=1e-4)
    p.add_argument("--small-threshold", type=int, default=16,
                   help="pieces with at most this many vertices are solved exactly")
    p.add_argument("--iters", type=int, default=None,
                   help="descent iterations (relax), rounds (random-tree) or generations (ga)")
    p.add_argument("--restarts", type=int, default=4)
    p.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock seconds from records")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="mmcut", description="Maximum minimal cut solvers.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, solver in SOLVE_COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=f"run the {solver} solver on edge-list files")
        sp.add_argument("inputs", nargs="+", type=Path)
    sp = sub.add_parser("decompose", parents=[common], help="list bridges and bridgeless pieces")
    sp.add_argument("inputs", nargs="+", type=Path)
    sp = sub.add_parser("gen", parents=[common], help="write random bridgeless weighted graphs")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--count", type=int, default=1)
    sp = sub.add_parser("bench", parents=[common], help="benchmark a solver over a directory")
    sp.add_argument("input_dir", type=Path)
    sp.add_argument("--solver", choices=SOLVERS, default="pioneer")
    sp.add_argument("--reps", type=int, default=5)
    sp.add_argument("--workers", type=int, default=1)
    return parser


def _settings(args: argparse.Namespace) -> BenchSettings:
    relax = RelaxConfig(alpha_mode=args.alpha, epsilon=args.epsilon, restarts=args.restarts,
                        seed=args.seed)
    if args.iters is not None:
        relax = replace(relax, max_iters=args.iters)
    pipeline = PipelineConfig(small_threshold=args.small_threshold, relax=relax)
    iters = args.iters if args.iters is not None else 500
    if args.command == "ga" and args.iters is None:
        iters = 100
    return BenchSettings(pipeline=pipeline, iters=iters, seed=args.seed,
                         reps=getattr(args, "reps", 1), timing=not args.no_timing)


def _open_out(args: argparse.Namespace):
    return open(args.out, "w", encoding="utf-8") if args.out else sys.stdout


def _cmd_solve(args: argparse.Namespace) -> int:
    settings = _settings(args)
    solver = SOLVE_COMMANDS[args.command]
    records = []
    for path in args.inputs:
        g = load_edge_list(path)
        start = time.perf_counter()
        sol = run_solver(solver, g, args.seed, settings)
        secs = time.perf_counter() - start if settings.timing else None
        records.append(make_record(g, sol, path.stem, solver, args.seed, secs))
    out = _open_out(args)
    try:
        write_records(out, records)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if all(r.feasible for r in records) else EXIT_INFEASIBLE


def _cmd_decompose(args: argparse.Namespace) -> int:
    out = _open_out(args)
    try:
        for path in args.inputs:
            d = decompose(load_edge_list(path))
            out.write(json.dumps({
                "graph_id": path.stem,
                "bridges": [list(b) for b in d.bridges],
                "components": [list(c.vertex_map) for c in d.components],
                "singletons": d.singleton_count,
            }) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    target = args.out or Path(".")
    target.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        g = generate_synthetic(args.n, args.m, args.seed + i)
        save_edge_list(target / f"g{args.n}_{args.m}_{args.seed + i:05d}.txt", g)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    if not args.input_dir.is_dir():
        raise InputError(f"{args.input_dir} is not a directory")
    report = bench(args.input_dir, _settings(args), args.solver, args.workers)
    print(json.dumps(report.summary(), sort_keys=True))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for r in report.records:
                fh.write(json.dumps(r.__dict__, sort_keys=True) + "\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"decompose": _cmd_decompose, "gen": _cmd_gen, "bench": _cmd_bench}
    try:
        return handlers.get(args.command, _cmd_solve)(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MMCutError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
