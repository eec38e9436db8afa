"""Kernel functions for regression: modified Dirichlet and Gaussian.

Both are normalised as k = k~ / sqrt(k~(x,x) k~(x',x')) before use.  The
Gaussian bandwidth heuristic is alpha = N^2 / sum_ij ||x_i - x_j||^2 over
the training inputs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DIRICHLET_CUTOFF = 3


@dataclass(frozen=True)
class KernelSpec:
    kind: str  # modified-dirichlet | gaussian | precomputed
    alpha: float | None = None
    cutoff: int = DIRICHLET_CUTOFF
    normalize: bool = True

    def __post_init__(self):
        if self.kind not in ("modified-dirichlet", "gaussian", "precomputed"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "gaussian" and (self.alpha is None or self.alpha <= 0):
            raise ValueError("gaussian kernel needs alpha > 0")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "alpha": self.alpha, "cutoff": self.cutoff,
                "normalize": self.normalize}

    @classmethod
    def from_dict(cls, d: dict) -> "KernelSpec":
        return cls(d["kind"], d.get("alpha"), d.get("cutoff", DIRICHLET_CUTOFF),
                   d.get("normalize", True))


def gaussian_alpha_heuristic(x: np.ndarray) -> float:
    x = np.atleast_2d(x)
    sq = np.sum((x[:, None, :] - x[None, :, :]) ** 2, axis=-1)
    total = sq.sum()
    if total <= 0:
        raise ValueError("degenerate inputs: zero pairwise spread")
    return float(len(x) ** 2 / total)


def _dirichlet_factor(d: np.ndarray, cutoff: int) -> np.ndarray:
    """D(d) = 1 + 2 sum_{k=1..cutoff} cos(pi k d)."""
    out = np.ones_like(d)
    for k in range(1, cutoff + 1):
        out = out + 2.0 * np.cos(np.pi * k * d)
    return out


def _dirichlet_raw(x: np.ndarray, y: np.ndarray, cutoff: int) -> np.ndarray:
    """sum_{i != j} D(dx_i) D(dx_j) via (sum D)^2 - sum D^2."""
    d = x[:, None, :] - y[None, :, :]
    factors = _dirichlet_factor(d, cutoff)
    s1 = factors.sum(axis=-1)
    s2 = (factors**2).sum(axis=-1)
    return s1**2 - s2


def _gaussian_raw(x: np.ndarray, y: np.ndarray, alpha: float) -> np.ndarray:
    sq = np.sum((x[:, None, :] - y[None, :, :]) ** 2, axis=-1)
    return np.exp(-alpha * sq)


def kernel_matrix(spec: KernelSpec, x: np.ndarray, y: np.ndarray | None = None) -> np.ndarray:
    """Kernel values between rows of x and rows of y (x itself when None)."""
    if spec.kind == "precomputed":
        raise ValueError("precomputed kernels pass Gram matrices directly")
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = x if y is None else np.atleast_2d(np.asarray(y, dtype=float))
    if x.shape[1] != y.shape[1]:
        raise ValueError("input dimension mismatch")
    if spec.kind == "gaussian":
        raw = _gaussian_raw(x, y, spec.alpha)
        if spec.normalize:
            return raw  # gaussian self-value is already 1
        return raw
    raw = _dirichlet_raw(x, y, spec.cutoff)
    if spec.normalize:
        dx = _dirichlet_raw(x, x, spec.cutoff).diagonal()
        dy = dx if y is x else _dirichlet_raw(y, y, spec.cutoff).diagonal()
        denom = np.sqrt(np.outer(dx, dy))
        if np.any(denom <= 0):
            raise ValueError("zero self-kernel in normalization")
        return raw / denom
    return raw


def kernel_eval(spec: KernelSpec, x: np.ndarray, y: np.ndarray) -> float:
    return float(kernel_matrix(spec, np.atleast_2d(x), np.atleast_2d(y))[0, 0])
