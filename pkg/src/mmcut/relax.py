"""Continuous relaxation of the maximum minimal cut, and its rounding.

A relaxed assignment ``x`` in ``[0, 1]^n`` is scored by

    loss(x) = alpha * cost(x) + beta * penalty(x)

where ``cost`` is the total weight minus the relaxed crossing weight and
``penalty`` is ``exp(-tau * (lambda3 - lambda2))`` over the Laplacian of the
graph whose edge (i, j) is scaled by ``(1 - x_i - x_j)^2``. With
``tau = -ln(epsilon) / lambda3(G)`` the penalty is ``epsilon ** (gap /
lambda3(G))``: one when the scaled graph has three or more components, small
when it is a clean two-way split. The loss is minimised per instance by
projected first-order descent and then rounded coordinate by coordinate.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import Degenerate, EigenFailure, RepairFailed
from .graph import Graph, Provenance, Solution, is_minimal_cut, make_solution
from .spectral import count_zero_eigenvalues, laplacian, laplacian_eigenvalues

log = logging.getLogger(__name__)

FD_STEP = 1e-5


@dataclass(frozen=True)
class RelaxConfig:
    alpha_mode: str = "ratio"  # "ratio": alpha = m / n, "unit": alpha = 1
    epsilon: float = 1e-4
    max_iters: int = 300
    restarts: int = 4
    step_size: float = 0.1
    seed: int = 0
    degeneracy_tol: float | None = None  # None: 1e-6 * largest eigenvalue
    round_order: str = "index"  # or "confidence"

    def __post_init__(self):
        if self.alpha_mode not in ("ratio", "unit"):
            raise ValueError(f"alpha_mode must be 'ratio' or 'unit', got {self.alpha_mode!r}")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iters < 0 or self.step_size <= 0:
            raise ValueError("max_iters must be >= 0 and step_size > 0")
        if self.round_order not in ("index", "confidence"):
            raise ValueError(f"unknown round_order {self.round_order!r}")


@dataclass(frozen=True)
class RelaxedState:
    x_hat: np.ndarray
    cost: float
    penalty: float
    loss: float
    lambda2: float
    lambda3: float
    alpha: float
    beta: float


@dataclass(frozen=True)
class GuaranteeReport:
    relaxed_loss: float
    discrete_loss: float
    alpha_beta: float
    guarantee_active: bool
    cost_bound_holds: bool
    monotone: bool


def _deflation_basis(n: int) -> np.ndarray:
    """Orthonormal basis (n x n-1) of the complement of the all-ones vector.

    Columns 2..n of the Householder reflector sending e_1 to ones / sqrt(n).
    """
    u = np.full(n, 1.0 / math.sqrt(n))
    u[0] -= 1.0
    h = np.eye(n) - 2.0 * np.outer(u, u) / float(u @ u)
    return h[:, 1:]


class Objective:
    """Loss, spectrum and gradient of the relaxation for one graph."""

    def __init__(self, g: Graph, cfg: RelaxConfig = RelaxConfig()):
        if g.n < 3:
            raise ValueError("relaxation needs at least 3 vertices")
        self.g = g
        self.cfg = cfg
        self.alpha = g.m / g.n if cfg.alpha_mode == "ratio" else 1.0
        self.beta = g.total_weight
        self.gamma = g.total_weight
        self.lambda3_graph = float(laplacian_eigenvalues(g.structure)[2])
        self.tau = -math.log(cfg.epsilon) / self.lambda3_graph
        self._struct = g.structure
        self._q: np.ndarray | None = None

    def relaxed_adjacency(self, x: np.ndarray) -> np.ndarray:
        s = 1.0 - x[:, None] - x[None, :]
        return s * s * self._struct

    def cost(self, x: np.ndarray) -> float:
        d = x[self.g.eu] - x[self.g.ev]
        return self.gamma - float(np.sum(self.g.weights * d * d))

    def penalty_from(self, eigenvalues: np.ndarray) -> float:
        return math.exp(-self.tau * (eigenvalues[2] - eigenvalues[1]))

    def spectrum(self, x: np.ndarray) -> np.ndarray:
        return laplacian_eigenvalues(self.relaxed_adjacency(x))

    def loss_value(self, x: np.ndarray) -> float:
        return self.alpha * self.cost(x) + self.beta * self.penalty_from(self.spectrum(x))

    def state(self, x: np.ndarray) -> RelaxedState:
        vals = self.spectrum(x)
        c = self.cost(x)
        p = self.penalty_from(vals)
        x = np.array(x, dtype=float)
        x.setflags(write=False)
        return RelaxedState(x, c, p, self.alpha * c + self.beta * p, float(vals[1]),
                            float(vals[2]), self.alpha, self.beta)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        """Analytic gradient; raises :class:`Degenerate` when it is undefined."""
        g = self.g
        eu, ev = g.eu, g.ev
        d = x[eu] - x[ev]
        grad_cost = (np.bincount(eu, weights=-2.0 * g.weights * d, minlength=g.n)
                     + np.bincount(ev, weights=2.0 * g.weights * d, minlength=g.n))

        if self._q is None:
            self._q = _deflation_basis(g.n)
        q = self._q
        lap = laplacian(self.relaxed_adjacency(x))
        try:
            mu, vecs = np.linalg.eigh(q.T @ lap @ q)
        except np.linalg.LinAlgError as exc:
            raise EigenFailure(str(exc)) from exc
        tol = self.cfg.degeneracy_tol
        if tol is None:
            tol = 1e-6 * max(float(mu[-1]), 0.0)
        if not mu[1] - mu[0] > tol or (mu.size > 2 and not mu[2] - mu[1] > tol):
            raise Degenerate(f"lambda2={mu[0]:.3g}, lambda3={mu[1]:.3g} not simple")

        s = 1.0 - x[eu] - x[ev]
        v2 = q @ vecs[:, 0]
        v3 = q @ vecs[:, 1]
        # d lambda / d a'_e = (v_u - v_v)^2 and d a'_e / d x_u = -2 s_e
        coef = -2.0 * s * ((v3[eu] - v3[ev]) ** 2 - (v2[eu] - v2[ev]) ** 2)
        dgap = np.bincount(eu, weights=coef, minlength=g.n) + np.bincount(ev, weights=coef, minlength=g.n)
        penalty = math.exp(-self.tau * (mu[1] - mu[0]))
        return self.alpha * grad_cost - self.beta * self.tau * penalty * dgap

    def fd_gradient(self, x: np.ndarray, h: float = FD_STEP) -> np.ndarray:
        out = np.empty(self.g.n)
        for i in range(self.g.n):
            xp = x.copy()
            xm = x.copy()
            xp[i] += h
            xm[i] -= h
            out[i] = (self.loss_value(xp) - self.loss_value(xm)) / (2.0 * h)
        return out

    def descent_gradient(self, x: np.ndarray) -> np.ndarray:
        try:
            return self.gradient(x)
        except Degenerate:
            return self.fd_gradient(x)


def _as_x(g: Graph, x_hat: Sequence[float]) -> np.ndarray:
    x = np.asarray(x_hat, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"x_hat has shape {x.shape}, expected ({g.n},)")
    if np.any(x < 0) or np.any(x > 1):
        raise ValueError("x_hat must lie in [0, 1]")
    return x


def relaxed_adjacency(g: Graph, x_hat: Sequence[float]) -> np.ndarray:
    """Adjacency with each edge scaled by ``(1 - x_i - x_j)^2``.

    Endpoints on the same discrete side keep the edge; opposite sides drop it.
    """
    x = _as_x(g, x_hat)
    s = 1.0 - x[:, None] - x[None, :]
    return s * s * g.structure


def cost(g: Graph, x_hat: Sequence[float]) -> float:
    x = _as_x(g, x_hat)
    d = x[g.eu] - x[g.ev]
    return g.total_weight - float(np.sum(g.weights * d * d))


def penalty(g: Graph, x_hat: Sequence[float], epsilon: float = 1e-4) -> float:
    obj = Objective(g, RelaxConfig(epsilon=epsilon))
    return obj.penalty_from(obj.spectrum(_as_x(g, x_hat)))


def loss(g: Graph, x_hat: Sequence[float], cfg: RelaxConfig = RelaxConfig()) -> RelaxedState:
    return Objective(g, cfg).state(_as_x(g, x_hat))


def loss_gradient(g: Graph, x_hat: Sequence[float], cfg: RelaxConfig = RelaxConfig()) -> np.ndarray:
    """Gradient of :func:`loss`; raises :class:`Degenerate` at repeated eigenvalues."""
    return Objective(g, cfg).gradient(_as_x(g, x_hat))


def _descend(obj: Objective, x: np.ndarray, max_iters: int, step_size: float) -> np.ndarray:
    fx = obj.loss_value(x)
    step = step_size
    min_step = step_size * 1e-6
    for _ in range(max_iters):
        grad = obj.descent_gradient(x)
        # components pushing against an active bound cannot move
        free = ~(((x <= 0.0) & (grad > 0)) | ((x >= 1.0) & (grad < 0)))
        pg = np.where(free, grad, 0.0)
        scale = float(np.max(np.abs(pg)))
        if scale < 1e-12:
            break
        direction = pg / scale
        while step >= min_step:
            xn = np.clip(x - step * direction, 0.0, 1.0)
            fn = obj.loss_value(xn)
            if fn < fx:
                x, fx = xn, fn
                step = min(step * 1.5, step_size)
                break
            step *= 0.5
        else:
            break
    return x


def optimize(g: Graph, cfg: RelaxConfig = RelaxConfig()) -> RelaxedState:
    """Best relaxed state over ``cfg.restarts`` projected-descent runs."""
    obj = Objective(g, cfg)
    best: RelaxedState | None = None
    for r in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, r])
        x0 = rng.uniform(0.2, 0.8, g.n)
        try:
            x = _descend(obj, x0, cfg.max_iters, cfg.step_size)
            st = obj.state(x)
        except EigenFailure as exc:
            log.warning("restart %d aborted: %s", r, exc)
            continue
        if best is None or st.loss < best.loss:
            best = st
    if best is None:
        raise EigenFailure("every restart failed")
    return best


def _discrete_eval(obj: Objective, x: np.ndarray) -> tuple[float, int]:
    vals = obj.spectrum(x)
    value = obj.alpha * obj.cost(x) + obj.beta * obj.penalty_from(vals)
    return value, count_zero_eigenvalues(vals)


def deterministic_round(g: Graph, state: RelaxedState,
                        cfg: RelaxConfig = RelaxConfig()) -> tuple[Solution, GuaranteeReport]:
    """Round coordinate by coordinate to whichever of 0/1 gives the lower loss.

    If the rounded loss is not below the relaxed one, single labels are then
    flipped, each time choosing the flip that brings the number of zero
    eigenvalues closest to two (lower loss breaking ties), until the rounded
    loss drops below the relaxed loss or no flip helps.
    """
    obj = Objective(g, cfg)
    x = np.array(state.x_hat, dtype=float)
    relaxed = obj.loss_value(x)
    if cfg.round_order == "confidence":
        order = sorted(range(g.n), key=lambda i: (-abs(x[i] - 0.5), i))
    else:
        order = list(range(g.n))
    for i in order:
        cur = x[i]
        x[i] = 0.0
        l0 = obj.loss_value(x)
        x[i] = 1.0
        l1 = obj.loss_value(x)
        if l0 < l1:
            x[i] = 0.0
        elif l1 < l0:
            x[i] = 1.0
        else:
            x[i] = 1.0 if cur > 0.5 else 0.0

    disc, zeros = _discrete_eval(obj, x)
    flips = 0
    while not disc < relaxed and flips < g.n:
        best = None
        for j in range(g.n):
            x[j] = 1.0 - x[j]
            val, z = _discrete_eval(obj, x)
            x[j] = 1.0 - x[j]
            key = (abs(z - 2), val)
            if best is None or key < best[0]:
                best = (key, j, val, z)
        if best is None or not best[0] < (abs(zeros - 2), disc):
            break
        _, j, disc, zeros = best
        x[j] = 1.0 - x[j]
        flips += 1

    sol = make_solution(g, x.astype(int), Provenance.RELAXATION)
    ab = obj.alpha * obj.beta
    report = GuaranteeReport(
        relaxed_loss=relaxed,
        discrete_loss=disc,
        alpha_beta=ab,
        guarantee_active=relaxed < ab,
        cost_bound_holds=obj.alpha * obj.cost(x) < relaxed,
        monotone=disc <= relaxed,
    )
    return sol, report


def _lambda3_of_split(g: Graph, labels: np.ndarray) -> float:
    same = labels[:, None] == labels[None, :]
    vals = laplacian_eigenvalues(g.structure * same)
    return float(vals[2]) if vals.size > 2 else 0.0


def constraint_prior_round(g: Graph, s: Solution) -> Solution:
    """Repair an infeasible assignment by single flips that maximise lambda3.

    Stops as soon as the graph with crossing edges removed has exactly two
    components; raises :class:`RepairFailed` after ``n`` flips otherwise.
    """
    if s.feasible:
        return s
    labels = np.array(s.assignment, dtype=np.int64)
    visited = {tuple(labels)}
    for _ in range(g.n):
        best = None
        for j in range(g.n):
            labels[j] ^= 1
            key = tuple(labels)
            if key not in visited:
                lam3 = _lambda3_of_split(g, labels)
                if best is None or lam3 > best[0]:
                    best = (lam3, j)
            labels[j] ^= 1
        if best is None:
            break
        labels[best[1]] ^= 1
        visited.add(tuple(labels))
        if is_minimal_cut(g, labels):
            return make_solution(g, labels, s.provenance)
    raise RepairFailed("no two-component relabelling reached within n flips")


def solve_relax(g: Graph, cfg: RelaxConfig = RelaxConfig()) -> tuple[Solution, GuaranteeReport]:
    """Optimise, round, and repair if the rounded assignment is infeasible."""
    state = optimize(g, cfg)
    sol, report = deterministic_round(g, state, cfg)
    if not sol.feasible:
        sol = constraint_prior_round(g, sol)
    return replace(sol, provenance=Provenance.RELAXATION), report
