"""Pure-numpy implementations of the hot kernels.

Mirrors the signatures of the compiled extension ``_kernels``; one of the
two is selected at import time in ``shadowlab._core``.  All statevector
buffers are (batch, 2**n) complex128 C-contiguous arrays and are modified
in place.  Qubit 0 is the least-significant bit of the amplitude index.
"""
from __future__ import annotations

import numpy as np

IMPL = "numpy"


def apply_1q(psi: np.ndarray, q: int, u: np.ndarray) -> None:
    """Apply one 2x2 unitary to qubit q of every row."""
    b, n = psi.shape
    view = psi.reshape(b, n >> (q + 1), 2, 1 << q)
    a0 = view[:, :, 0, :]
    a1 = view[:, :, 1, :]
    n0 = u[0, 0] * a0 + u[0, 1] * a1
    n1 = u[1, 0] * a0 + u[1, 1] * a1
    view[:, :, 0, :] = n0
    view[:, :, 1, :] = n1


def apply_1q_distinct(psi: np.ndarray, q: int, u: np.ndarray) -> None:
    """Apply a different 2x2 unitary (u[r]) to qubit q of each row r."""
    b, n = psi.shape
    view = psi.reshape(b, n >> (q + 1), 2, 1 << q)
    a0 = view[:, :, 0, :]
    a1 = view[:, :, 1, :]
    u = u[:, :, :, None, None]
    n0 = u[:, 0, 0] * a0 + u[:, 0, 1] * a1
    n1 = u[:, 1, 0] * a0 + u[:, 1, 1] * a1
    view[:, :, 0, :] = n0
    view[:, :, 1, :] = n1


def _two_qubit_index_sets(n: int, q1: int, q2: int):
    idx = np.arange(n)
    base = idx[((idx >> q1) & 1 == 0) & ((idx >> q2) & 1 == 0)]
    return base, base | (1 << q1), base | (1 << q2), base | (1 << q1) | (1 << q2)


def apply_2q(psi: np.ndarray, q1: int, q2: int, u: np.ndarray) -> None:
    """Apply a 4x4 unitary to qubits (q1, q2); index of u is bit(q2)*2 + bit(q1)."""
    _, n = psi.shape
    i00, i01, i10, i11 = _two_qubit_index_sets(n, q1, q2)
    v = np.stack([psi[:, i00], psi[:, i01], psi[:, i10], psi[:, i11]])
    r = np.einsum("ij,jbm->ibm", u, v)
    psi[:, i00] = r[0]
    psi[:, i01] = r[1]
    psi[:, i10] = r[2]
    psi[:, i11] = r[3]


def apply_cx(psi: np.ndarray, control: int, target: int) -> None:
    _, n = psi.shape
    idx = np.arange(n)
    src = idx[((idx >> control) & 1 == 1) & ((idx >> target) & 1 == 0)]
    dst = src | (1 << target)
    tmp = psi[:, src].copy()
    psi[:, src] = psi[:, dst]
    psi[:, dst] = tmp


def apply_cz(psi: np.ndarray, q1: int, q2: int) -> None:
    _, n = psi.shape
    idx = np.arange(n)
    hit = idx[((idx >> q1) & 1 == 1) & ((idx >> q2) & 1 == 1)]
    psi[:, hit] *= -1.0


def born_sample(psi: np.ndarray, uniforms: np.ndarray, out: np.ndarray) -> None:
    """Sample one basis index per row; uniforms in [0,1), out int64 (batch,)."""
    p = np.abs(psi) ** 2
    c = np.cumsum(p, axis=1)
    totals = c[:, -1]
    thresholds = uniforms * totals
    out[:] = (c < thresholds[:, None]).sum(axis=1)
    np.clip(out, 0, psi.shape[1] - 1, out=out)


def overlap_gram(rows_a: np.ndarray, rows_b: np.ndarray, out: np.ndarray) -> None:
    """out[t,s] = sum_i (9|<row_a[t,i]|row_b[s,i]>|^2 - 4).

    rows_* are (T, n_qubits, 2) complex snapshots rows (<b|U per qubit).
    """
    a = rows_a.transpose(1, 0, 2)
    bc = rows_b.conj().transpose(1, 2, 0)
    z = np.matmul(a, bc)  # (n, Ta, Tb)
    out[:] = (9.0 * (z.real**2 + z.imag**2) - 4.0).sum(axis=0)


def rotate_block(m: np.ndarray, k0: int, o: np.ndarray) -> None:
    """M <- O_emb M O_emb^T for every row of the (B, 2n, 2n) batch.

    o is 4x4 orthogonal acting on contiguous coordinates k0..k0+3.
    """
    sl = slice(k0, k0 + 4)
    m[:, sl, :] = np.einsum("ij,bjk->bik", o, m[:, sl, :])
    m[:, :, sl] = np.einsum("bki,ji->bkj", m[:, :, sl], o)


def gaussian_sample(m: np.ndarray, uniforms: np.ndarray, bits: np.ndarray) -> None:
    """Sample occupation bits from pure-Gaussian covariance matrices.

    m: (B, 2n, 2n) antisymmetric covariances, destroyed in place.
    uniforms: (B, n) in [0,1).  bits: (B, n) uint8 output.
    Mode j occupation probability is (1 + M[2j, 2j+1]) / 2; measuring
    conditions the remaining modes through a rank-2 update.
    """
    n = m.shape[1] // 2
    for j in range(n):
        k = 2 * j
        mj = np.clip(m[:, k, k + 1], -1.0, 1.0)
        p1 = 0.5 * (1.0 + mj)
        b = uniforms[:, j] < p1
        bits[:, j] = b
        s = np.where(b, 1.0, -1.0)
        denom = 1.0 + s * mj
        w = np.where(denom > 1e-12, s / np.maximum(denom, 1e-12), 0.0)
        if j == n - 1:
            break
        a = m[:, k + 2 :, k]
        c = m[:, k + 2 :, k + 1]
        m[:, k + 2 :, k + 2 :] += w[:, None, None] * (
            c[:, :, None] * a[:, None, :] - a[:, :, None] * c[:, None, :]
        )
