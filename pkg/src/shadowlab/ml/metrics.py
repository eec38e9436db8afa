"""Prediction-error metrics."""
from __future__ import annotations

import numpy as np

LAMBDA_GRID = (0.0125, 0.025, 0.05, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0)


def rmse(pred: np.ndarray, exact: np.ndarray) -> float:
    """Per-sample RMSE over predicted entries, averaged over samples."""
    pred = np.atleast_2d(np.asarray(pred, dtype=float))
    exact = np.atleast_2d(np.asarray(exact, dtype=float))
    if pred.shape != exact.shape:
        raise ValueError(f"shape mismatch {pred.shape} vs {exact.shape}")
    per_sample = np.sqrt(np.mean((pred - exact) ** 2, axis=1))
    return float(per_sample.mean())


def select_lambda(train: tuple[np.ndarray, np.ndarray],
                  validation: tuple[np.ndarray, np.ndarray],
                  spec, grid=LAMBDA_GRID) -> tuple[float, dict[float, float]]:
    """Grid-search lambda by validation RMSE; ties resolve to the smaller value."""
    from .krr import krr_fit, krr_predict

    x_train, y_train = train
    x_val, y_val = validation
    if len(x_train) == 0 or len(x_val) == 0:
        raise ValueError("empty train or validation set")
    scores: dict[float, float] = {}
    best_lam, best_score = None, np.inf
    for lam in sorted(grid):
        model = krr_fit(x_train, y_train, spec, lam)
        scores[lam] = rmse(krr_predict(model, x_val), y_val)
        if scores[lam] < best_score - 1e-15:
            best_lam, best_score = lam, scores[lam]
    return float(best_lam), scores
