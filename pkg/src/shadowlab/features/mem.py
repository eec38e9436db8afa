"""Measurement-error mitigation via response-matrix inversion."""
from __future__ import annotations

import numpy as np
from scipy import linalg

N_BITS = 4
DIM = 1 << N_BITS


def calibrate_response(readout_rates: float | tuple[float, float], shots: int,
                       rng: np.random.Generator) -> np.ndarray:
    """Empirical 16x16 response matrix from the 16 basis preparations.

    Column j is the outcome distribution when basis state j is prepared and
    read out through the per-bit flip channel.
    """
    if shots <= 0:
        raise ValueError("shots must be positive")
    if isinstance(readout_rates, tuple):
        p01, p10 = readout_rates
    else:
        p01 = p10 = float(readout_rates)
    r = np.zeros((DIM, DIM))
    for j in range(DIM):
        bits = (j >> np.arange(N_BITS)) & 1
        u = rng.random((shots, N_BITS))
        flip = np.where(bits[None, :] == 1, u < p10, u < p01)
        outcomes = ((bits[None, :] ^ flip) << np.arange(N_BITS)).sum(axis=1)
        counts = np.bincount(outcomes, minlength=DIM)
        r[:, j] = counts / shots
    return r


def exact_response(readout_rates: float | tuple[float, float]) -> np.ndarray:
    """Tensor-power response matrix (the shots -> infinity limit)."""
    if isinstance(readout_rates, tuple):
        p01, p10 = readout_rates
    else:
        p01 = p10 = float(readout_rates)
    single = np.array([[1 - p01, p10], [p01, 1 - p10]])
    r = np.array([[1.0]])
    for _ in range(N_BITS):
        r = np.kron(single, r)
    return r


def mitigate(response: np.ndarray, p_exp: np.ndarray,
             project: bool = False) -> np.ndarray:
    """p_MEM solving R p = p_exp; entries may go slightly negative.

    project=True afterwards maps the result to the probability simplex for
    consumers that need proper probabilities.
    """
    response = np.asarray(response, dtype=float)
    p_exp = np.asarray(p_exp, dtype=float)
    try:
        with np.errstate(divide="ignore", invalid="ignore"):
            p = linalg.solve(response, p_exp)
    except linalg.LinAlgError as exc:
        raise ValueError("singular response matrix") from exc
    if not np.all(np.isfinite(p)):
        raise ValueError("singular response matrix")
    if project:
        p = _project_simplex(p)
    return p


def _project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    rho = np.nonzero(u + (1.0 - css) / np.arange(1, len(v) + 1) > 0)[0][-1]
    theta = (1.0 - css[rho]) / (rho + 1)
    return np.maximum(v + theta, 0.0)
