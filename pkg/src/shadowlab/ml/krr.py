"""Kernel ridge regression with a shared factorization for all targets."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .kernels import KernelSpec, kernel_matrix

RESIDUAL_TOL = 1e-8


@dataclass
class KRRModel:
    dual: np.ndarray          # (N, n_targets)
    x_train: np.ndarray | None
    lam: float
    spec: KernelSpec
    gram: np.ndarray | None = None  # kept for precomputed kernels

    def to_json(self) -> str:
        return json.dumps({
            "dual": self.dual.tolist(),
            "x_train": None if self.x_train is None else self.x_train.tolist(),
            "lam": self.lam,
            "spec": self.spec.to_dict(),
        })

    @classmethod
    def from_json(cls, payload: str) -> "KRRModel":
        d = json.loads(payload)
        return cls(np.array(d["dual"]),
                   None if d["x_train"] is None else np.array(d["x_train"]),
                   float(d["lam"]), KernelSpec.from_dict(d["spec"]))


def _solve_regularized(k: np.ndarray, targets: np.ndarray, lam: float) -> np.ndarray:
    n = k.shape[0]
    a = k + lam * np.eye(n)
    if lam == 0.0:
        if np.linalg.matrix_rank(k) < n:
            raise np.linalg.LinAlgError("singular kernel matrix at lambda = 0")
        return np.linalg.solve(a, targets)
    try:
        factor = cho_factor(a, lower=True)
        return cho_solve(factor, targets)
    except np.linalg.LinAlgError:
        jitter = 1e-10 * np.trace(a) / n
        factor = cho_factor(a + jitter * np.eye(n), lower=True)
        return cho_solve(factor, targets)


def krr_fit(x: np.ndarray | None, targets: np.ndarray, spec: KernelSpec, lam: float,
            gram: np.ndarray | None = None) -> KRRModel:
    """Solve (K + lam I) A = targets; targets may hold many columns.

    For spec.kind == "precomputed" pass the training Gram directly.
    """
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    targets = np.atleast_2d(np.asarray(targets, dtype=float))
    if targets.shape[0] == 1 and targets.shape[1] != 1 and x is not None and len(x) == targets.shape[1]:
        targets = targets.T
    if spec.kind == "precomputed":
        if gram is None:
            raise ValueError("precomputed kernel needs a Gram matrix")
        k = np.asarray(gram, dtype=float)
    else:
        k = kernel_matrix(spec, x)
    dual = _solve_regularized(k, targets, lam)
    residual = np.linalg.norm((k + lam * np.eye(k.shape[0])) @ dual - targets)
    if residual > RESIDUAL_TOL * max(np.linalg.norm(targets), 1e-30):
        raise RuntimeError(f"linear solve residual {residual:.2e} too large")
    return KRRModel(dual=np.asarray(dual), x_train=None if x is None else np.asarray(x),
                    lam=lam, spec=spec, gram=k if spec.kind == "precomputed" else None)


def krr_predict(model: KRRModel, x_new: np.ndarray | None = None,
                cross_gram: np.ndarray | None = None) -> np.ndarray:
    """Predictions sum_i k(x_new, x_i) A_i; rows = query points."""
    if model.spec.kind == "precomputed":
        if cross_gram is None:
            raise ValueError("precomputed kernel needs k(x_new, x_train) rows")
        k = np.atleast_2d(np.asarray(cross_gram, dtype=float))
    else:
        k = kernel_matrix(model.spec, np.atleast_2d(x_new), model.x_train)
    return k @ model.dual
