"""Ground-state correlation matrices of quadratic Hamiltonians."""
from __future__ import annotations

import csv

import numpy as np

from .hamiltonians import check_single_particle

DEGENERACY_TOL = 1e-9
IDEMPOTENCY_TOL = 1e-10


def ground_correlation(h: np.ndarray, n_occ: int | None = None) -> tuple[np.ndarray, np.ndarray, dict]:
    """Fill the n_occ lowest modes of h; returns (C, Q, info).

    Q is (n_occ, n) with orthonormal rows (occupied orbitals); C = Q^T Q.
    A near-degenerate Fermi level is flagged; the deterministic eigensolver
    ordering provides the tie-break.
    """
    check_single_particle(h)
    n = h.shape[0]
    if n_occ is None:
        n_occ = n // 2
    if not 0 < n_occ < n:
        raise ValueError("n_occ must be in (0, n)")
    eps, vecs = np.linalg.eigh(h)
    q = vecs[:, :n_occ].T.copy()
    c = q.T @ q
    gap = float(eps[n_occ] - eps[n_occ - 1])
    info = {"energies": eps, "gap": gap, "degenerate": gap < DEGENERACY_TOL}
    return c, q, info


def check_correlation_matrix(c: np.ndarray, n_occ: int | None = None,
                             idempotent: bool = False, tol: float = 1e-8) -> None:
    if np.max(np.abs(c - c.T)) > tol:
        raise ValueError("correlation matrix is not symmetric")
    evals = np.linalg.eigvalsh(c)
    if evals.min() < -tol or evals.max() > 1 + tol:
        raise ValueError("correlation matrix eigenvalues outside [0, 1]")
    if n_occ is not None and abs(np.trace(c) - n_occ) > tol:
        raise ValueError("trace does not match filling")
    if idempotent and np.linalg.norm(c @ c - c) > IDEMPOTENCY_TOL:
        raise ValueError("correlation matrix is not idempotent")


def save_correlation_csv(path, c: np.ndarray, n_occ: int) -> None:
    n = c.shape[0]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([n, n_occ])
        for row in c:
            writer.writerow([format(v, ".17g") for v in row])


def load_correlation_csv(path) -> tuple[np.ndarray, int]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    n, n_occ = int(rows[0][0]), int(rows[0][1])
    c = np.array([[float(v) for v in row] for row in rows[1 : n + 1]])
    if c.shape != (n, n):
        raise ValueError("malformed correlation CSV")
    return c, n_occ
