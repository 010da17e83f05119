"""Laplacian spectra of (weighted) adjacency matrices."""
from __future__ import annotations

import numpy as np

from .errors import EigenFailure, UnsupportedScale

MAX_DENSE_N = 2048
ZERO_RTOL = 1e-8


def laplacian(adj: np.ndarray) -> np.ndarray:
    """``L = D - A`` for a symmetric adjacency matrix with zero diagonal."""
    adj = np.asarray(adj, dtype=float)
    return np.diag(adj.sum(axis=1)) - adj


def laplacian_eigenvalues(adj: np.ndarray, k: int | None = None) -> np.ndarray:
    """Ascending Laplacian eigenvalues of ``adj``; the ``k`` smallest if given."""
    adj = np.asarray(adj, dtype=float)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError(f"adjacency must be square, got shape {adj.shape}")
    if adj.shape[0] > MAX_DENSE_N:
        raise UnsupportedScale(f"n={adj.shape[0]} exceeds dense eigensolver limit {MAX_DENSE_N}")
    try:
        vals = np.linalg.eigvalsh(laplacian(adj))
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    if not np.all(np.isfinite(vals)):
        raise EigenFailure("non-finite eigenvalues")
    return vals if k is None else vals[:k]


def zero_tolerance(eigenvalues: np.ndarray) -> float:
    lam_max = float(np.max(eigenvalues)) if len(eigenvalues) else 0.0
    return ZERO_RTOL * max(1.0, lam_max)


def count_zero_eigenvalues(eigenvalues: np.ndarray) -> int:
    """Number of eigenvalues treated as zero, i.e. the component count."""
    eigenvalues = np.asarray(eigenvalues)
    return int(np.sum(eigenvalues < zero_tolerance(eigenvalues)))
