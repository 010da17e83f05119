"""Edge-list files and JSON-lines solution records."""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import IO, Iterable

from .errors import InputError, ParseError
from .graph import Graph, Solution, build_graph


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``u v [w]`` lines; ``#`` lines are comments."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if header is None:
                if len(parts) != 2:
                    raise ValueError("header must be 'n m'")
                header = (int(parts[0]), int(parts[1]))
                if header[0] < 0 or header[1] < 0:
                    raise ValueError("negative count in header")
                continue
            if len(parts) not in (2, 3):
                raise ValueError("expected 'u v' or 'u v w'")
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError as exc:
            raise ParseError(f"{exc}: {raw!r}", line=lineno) from None
        edges.append((u, v, w))
    if header is None:
        raise ParseError("missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def load_edge_list(path: str | os.PathLike) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_edge_list(text)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v} {w!r}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def save_edge_list(path: str | os.PathLike, g: Graph) -> None:
    Path(path).write_text(format_edge_list(g), encoding="utf-8")


@dataclass(frozen=True)
class SolutionRecord:
    graph_id: str
    n: int
    m: int
    cut_value: float
    feasible: bool
    assignment: str
    cut_edges: list
    solver: str
    seed: int
    seconds: float | None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def make_record(g: Graph, s: Solution, graph_id: str, solver: str, seed: int,
                seconds: float | None = None) -> SolutionRecord:
    """Record for ``s``; ``seconds=None`` keeps records byte-comparable across runs."""
    a = s.assignment
    cut_edges = [[u, v, w] for u, v, w in g.edges if a[u] != a[v]]
    return SolutionRecord(
        graph_id=graph_id, n=g.n, m=g.m, cut_value=s.cut_value, feasible=s.feasible,
        assignment="".join(str(int(x)) for x in a), cut_edges=cut_edges,
        solver=solver, seed=seed, seconds=seconds)


def write_records(out: IO[str], records: Iterable[SolutionRecord]) -> None:
    for r in records:
        out.write(r.to_json() + "\n")


def save_solution(path: str | os.PathLike, records: Iterable[SolutionRecord]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_records(fh, records)


def read_records(path: str | os.PathLike) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
