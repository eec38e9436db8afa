"""Shadow kernel between shadow sets and batched Gram computation.

The kernel is a double exponential of per-qubit snapshot overlaps
Tr(sigma_i sigma~_i) = 9 |<b_i| U_i U~_i^dag |b~_i>|^2 - 4; the "full"
variant averages over all record pairs, the "off-diagonal" variant (the
numerically stable form used for ML) omits t == t'.  Gram matrices are
computed in log space and normalised to tame the double exponential.
"""
from __future__ import annotations

import numpy as np

from .. import _core
from .records import ShadowSet

EXP_CLAMP = 700.0


def snapshot_overlap(set_a: ShadowSet, t: int, set_b: ShadowSet, s: int, qubit: int) -> float:
    """Tr(sigma_i^(t) sigma~_i^(s)) in closed form; value in [-4, 5]."""
    va = set_a.rows()[t, qubit]
    vb = set_b.rows()[s, qubit]
    amp = np.dot(va, vb.conj())
    return float(9.0 * abs(amp) ** 2 - 4.0)


def overlap_matrix(set_a: ShadowSet, set_b: ShadowSet) -> np.ndarray:
    """W[t, s] = sum_i Tr(sigma_i^(t) sigma~_i^(s))."""
    if set_a.n_qubits != set_b.n_qubits:
        raise ValueError("qubit count mismatch")
    out = np.empty((set_a.n_records, set_b.n_records))
    _core.overlap_gram(set_a.rows(), set_b.rows(), out)
    return out


def log_shadow_kernel(set_a: ShadowSet, set_b: ShadowSet, tau: float = 1.0,
                      gamma: float = 1.0, variant: str = "off-diagonal") -> tuple[float, bool]:
    """log k_shadow and a flag marking exponent clamping.

    Arguments are ordered canonically by content hash so k(a, b) and
    k(b, a) run the identical float summation (exact symmetry).
    """
    if set_a.digest() > set_b.digest():
        set_a, set_b = set_b, set_a
    w = overlap_matrix(set_a, set_b)
    n = set_a.n_qubits
    inner = np.exp(np.minimum(gamma * w / n, EXP_CLAMP))
    if variant == "full":
        mean = inner.mean()
    elif variant == "off-diagonal":
        ta, tb = inner.shape
        if ta != tb:
            raise ValueError("off-diagonal variant needs equally sized sets")
        if ta < 2:
            raise ValueError("off-diagonal variant needs at least two records")
        mean = (inner.sum() - np.trace(inner)) / (ta * (ta - 1))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    log_k = tau * mean
    clamped = log_k > EXP_CLAMP or np.any(gamma * w / n > EXP_CLAMP)
    return float(min(log_k, EXP_CLAMP)), bool(clamped)


def shadow_kernel(set_a: ShadowSet, set_b: ShadowSet, tau: float = 1.0,
                  gamma: float = 1.0, variant: str = "off-diagonal") -> float:
    log_k, _ = log_shadow_kernel(set_a, set_b, tau, gamma, variant)
    return float(np.exp(log_k))


def gram(sets: list[ShadowSet], tau: float = 1.0, gamma: float = 1.0,
         variant: str = "off-diagonal", normalize: bool = True,
         sets_b: list[ShadowSet] | None = None) -> tuple[np.ndarray, dict]:
    """Kernel matrix between shadow sets (symmetric when sets_b is None).

    With normalize=True entries are K_ij / sqrt(K_ii K_jj), evaluated in
    log space; cross grams (sets_b given) normalise with the diagonal
    self-kernels of both collections.
    """
    n = sets[0].n_qubits
    for s in sets + (sets_b or []):
        if s.n_qubits != n:
            raise ValueError("all shadow sets must share the qubit count")
    clamped = False

    def log_k(a, b):
        nonlocal clamped
        v, c = log_shadow_kernel(a, b, tau, gamma, variant)
        clamped = clamped or c
        return v

    if sets_b is None:
        m = len(sets)
        logs = np.zeros((m, m))
        for i in range(m):
            for j in range(i, m):
                logs[i, j] = logs[j, i] = log_k(sets[i], sets[j])
        if normalize:
            d = np.diagonal(logs)
            out = np.exp(logs - 0.5 * (d[:, None] + d[None, :]))
        else:
            out = np.exp(np.minimum(logs, EXP_CLAMP))
        info = {"clamped": clamped, "min_eigenvalue": float(np.linalg.eigvalsh(out).min())}
        return out, info

    rows = len(sets)
    cols = len(sets_b)
    logs = np.zeros((rows, cols))
    for i in range(rows):
        for j in range(cols):
            logs[i, j] = log_k(sets[i], sets_b[j])
    if normalize:
        da = np.array([log_k(s, s) for s in sets])
        db = np.array([log_k(s, s) for s in sets_b])
        out = np.exp(logs - 0.5 * (da[:, None] + db[None, :]))
    else:
        out = np.exp(np.minimum(logs, EXP_CLAMP))
    return out, {"clamped": clamped}
