"""Purification of noisy correlation matrices toward idempotency."""
from __future__ import annotations

import numpy as np

BASIN = (-0.5, 1.5)


def mcweeny(c: np.ndarray, max_iter: int = 100, tol: float = 1e-10) -> tuple[np.ndarray, dict]:
    """Iterate C <- C^2 (3I - 2C) until ||C^2 - C||_F <= tol.

    Converges for symmetric C with eigenvalues inside (-0.5, 1.5); inputs
    outside the basin are rejected.  Returns (C, info) with the iteration
    count, convergence flag and trace drift.
    """
    c = np.asarray(c, dtype=float)
    if np.max(np.abs(c - c.T)) > 1e-8:
        raise ValueError("matrix must be symmetric")
    evals = np.linalg.eigvalsh(c)
    if evals.min() <= BASIN[0] or evals.max() >= BASIN[1]:
        raise ValueError(
            f"eigenvalues [{evals.min():.4f}, {evals.max():.4f}] outside convergence basin")
    trace0 = float(np.trace(c))
    eye = np.eye(c.shape[0])
    iterations = 0
    converged = False
    for iterations in range(max_iter + 1):
        residual = np.linalg.norm(c @ c - c)
        if residual <= tol:
            converged = True
            break
        if iterations == max_iter:
            break
        c = c @ c @ (3.0 * eye - 2.0 * c)
        c = 0.5 * (c + c.T)
    info = {
        "iterations": iterations,
        "converged": converged,
        "residual": float(np.linalg.norm(c @ c - c)),
        "trace_drift": float(np.trace(c) - trace0),
    }
    return c, info
