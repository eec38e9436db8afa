"""Gaussian-kernel SVM solved by simplified SMO (exact at these sizes)."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

KKT_TOL = 1e-6


def svm_gamma_scale(points: np.ndarray) -> float:
    """Bandwidth 1/(n_features * Var(X)) with Var over all entries."""
    points = np.atleast_2d(points)
    var = float(points.var())
    if var <= 0:
        raise ValueError("degenerate points: zero variance")
    return 1.0 / (points.shape[1] * var)


@dataclass
class SVMModel:
    support_points: np.ndarray
    support_coeffs: np.ndarray  # alpha_i * y_i
    bias: float
    alpha_rbf: float
    c: float
    kernel: str = "rbf"

    def to_json(self) -> str:
        return json.dumps({
            "support_points": self.support_points.tolist(),
            "support_coeffs": self.support_coeffs.tolist(),
            "bias": self.bias, "alpha_rbf": self.alpha_rbf, "c": self.c,
            "kernel": self.kernel,
        })

    @classmethod
    def from_json(cls, payload: str) -> "SVMModel":
        d = json.loads(payload)
        return cls(np.array(d["support_points"]), np.array(d["support_coeffs"]),
                   float(d["bias"]), float(d["alpha_rbf"]), float(d["c"]),
                   d.get("kernel", "rbf"))


def _rbf(alpha: float, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    sq = np.sum((a[:, None, :] - b[None, :, :]) ** 2, axis=-1)
    return np.exp(-alpha * sq)


def svm_fit(points: np.ndarray, labels: np.ndarray, alpha_rbf: float | None = None,
            c: float = 1.0, max_passes: int = 200, seed: int = 0,
            kernel: str = "rbf") -> SVMModel:
    """Dual SMO solve; labels in {-1, +1}, at least one point per class."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    labels = np.asarray(labels, dtype=float).ravel()
    if set(np.unique(labels)) - {-1.0, 1.0}:
        raise ValueError("labels must be -1 or +1")
    if len(set(labels)) < 2:
        raise ValueError("need both classes present")
    if kernel == "linear":
        alpha_rbf = 0.0
        k = points @ points.T
    else:
        if alpha_rbf is None:
            alpha_rbf = svm_gamma_scale(points)
        k = _rbf(alpha_rbf, points, points)
    n = len(points)
    alphas = np.zeros(n)
    bias = 0.0
    rng = np.random.default_rng(seed)

    def decision(idx):
        return (alphas * labels) @ k[:, idx] + bias

    passes = 0
    it = 0
    while passes < 10 and it < max_passes:
        changed = 0
        for i in range(n):
            ei = decision(i) - labels[i]
            if (labels[i] * ei < -KKT_TOL and alphas[i] < c) or (
                    labels[i] * ei > KKT_TOL and alphas[i] > 0):
                j = i
                while j == i:
                    j = int(rng.integers(0, n))
                ej = decision(j) - labels[j]
                ai_old, aj_old = alphas[i], alphas[j]
                if labels[i] == labels[j]:
                    lo, hi = max(0.0, ai_old + aj_old - c), min(c, ai_old + aj_old)
                else:
                    lo, hi = max(0.0, aj_old - ai_old), min(c, c + aj_old - ai_old)
                if hi - lo < 1e-12:
                    continue
                eta = 2 * k[i, j] - k[i, i] - k[j, j]
                if eta >= 0:
                    continue
                aj_new = np.clip(aj_old - labels[j] * (ei - ej) / eta, lo, hi)
                if abs(aj_new - aj_old) < 1e-12:
                    continue
                ai_new = ai_old + labels[i] * labels[j] * (aj_old - aj_new)
                alphas[i], alphas[j] = ai_new, aj_new
                b1 = bias - ei - labels[i] * (ai_new - ai_old) * k[i, i] \
                    - labels[j] * (aj_new - aj_old) * k[i, j]
                b2 = bias - ej - labels[i] * (ai_new - ai_old) * k[i, j] \
                    - labels[j] * (aj_new - aj_old) * k[j, j]
                if 0 < ai_new < c:
                    bias = b1
                elif 0 < aj_new < c:
                    bias = b2
                else:
                    bias = 0.5 * (b1 + b2)
                changed += 1
        it += 1
        passes = passes + 1 if changed == 0 else 0

    keep = alphas > 1e-12
    return SVMModel(points[keep], alphas[keep] * labels[keep], float(bias),
                    float(alpha_rbf), float(c), kernel)


def svm_decision(model: SVMModel, points: np.ndarray) -> np.ndarray:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if model.kernel == "linear":
        k = points @ model.support_points.T
    else:
        k = _rbf(model.alpha_rbf, points, model.support_points)
    return k @ model.support_coeffs + model.bias


def svm_predict(model: SVMModel, points: np.ndarray) -> np.ndarray:
    d = svm_decision(model, points)
    return np.where(d >= 0, 1.0, -1.0)
