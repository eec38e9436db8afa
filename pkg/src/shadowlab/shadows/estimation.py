"""Unbiased observable estimation from shadow sets."""
from __future__ import annotations

import numpy as np

from ..simcore import PauliString
from ..simcore.gates import zyz_angles
from ..simcore.pauli import single_qubit_matrix
from .records import LocalObservable, ShadowSet

_EINSUM_LETTERS = "abcdefgh"


def single_shot_values(shadow: ShadowSet, observable: PauliString | LocalObservable) -> np.ndarray:
    """Per-record estimator values o_t = Tr(O rho_t).

    Only support qubits contribute (traceless corrections elsewhere reduce
    to unit factors), so the cost is O(T 4^|support|).
    """
    rows = shadow.rows()
    if isinstance(observable, PauliString):
        if observable.n_qubits != shadow.n_qubits:
            raise ValueError("observable length does not match shadow set")
        support = observable.support
        vals = np.full(shadow.n_records, observable.coefficient)
        for i in support:
            p = single_qubit_matrix(observable.letters[i])
            v = rows[:, i, :]
            factor = 3.0 * np.einsum("ta,ab,tb->t", v, p, v.conj()).real
            vals = vals * factor
        return vals
    support = observable.support
    if max(support) >= shadow.n_qubits:
        raise ValueError("observable support outside shadow set")
    k = len(support)
    sigmas = []
    for i in support:
        v = rows[:, i, :]
        sigmas.append(3.0 * np.einsum("ta,tb->tab", v.conj(), v)
                      - np.eye(2)[None])
    # Tr(O (sigma_{k-1} x ... x sigma_0)): row/col bits per qubit
    o = observable.matrix.reshape((2,) * (2 * k))
    args = []
    for pos, sigma in enumerate(sigmas):
        # support qubit at `pos` is matrix bit `pos`: row axis k-1-pos,
        # col axis 2k-1-pos of the reshaped observable
        row_ax = _EINSUM_LETTERS[k - 1 - pos]
        col_ax = _EINSUM_LETTERS[2 * k - 1 - pos]
        args.append((sigma, f"t{col_ax}{row_ax}"))
    o_spec = _EINSUM_LETTERS[: 2 * k]
    einsum_str = ",".join([o_spec] + [a[1] for a in args]) + "->t"
    vals = np.einsum(einsum_str, o, *[a[0] for a in args]).real
    return vals


def estimate(shadow: ShadowSet, observable: PauliString | LocalObservable,
             median_of_means: int | None = None) -> tuple[float, float]:
    """(mean, standard error) of the shadow estimator.

    median_of_means, when set, splits records into that many batches and
    returns the median of batch means (robust variant; the plain mean is
    the default estimator).
    """
    vals = single_shot_values(shadow, observable)
    t = len(vals)
    stderr = float(vals.std(ddof=1) / np.sqrt(t)) if t > 1 else float("inf")
    if median_of_means and median_of_means > 1:
        batches = np.array_split(vals, median_of_means)
        return float(np.median([b.mean() for b in batches])), stderr
    return float(vals.mean()), stderr


def virtual_unitary(shadow: ShadowSet, v) -> ShadowSet:
    """Post-processing gate: U_i <- U_i V_i^dag, so snapshots transform as
    sigma -> V sigma V^dag.  v is (n, 2, 2), a list of 2x2 matrices, or a
    dict {qubit: 2x2} (identity elsewhere)."""
    n = shadow.n_qubits
    if isinstance(v, dict):
        mats = [np.eye(2, dtype=complex)] * n
        for q, m in v.items():
            mats[q] = np.asarray(m, dtype=complex)
        v = np.stack(mats)
    else:
        v = np.asarray(v, dtype=complex)
        if v.shape != (n, 2, 2):
            raise ValueError("virtual gate must factorize into one 2x2 per qubit")
    for q in range(n):
        m = v[q]
        if np.max(np.abs(m.conj().T @ m - np.eye(2))) > 1e-10:
            raise ValueError(f"virtual gate on qubit {q} is not unitary")
    angles = np.empty_like(shadow.angles)
    for t in range(shadow.n_records):
        for i in range(n):
            u = shadow.unitary(t, i) @ v[i].conj().T
            angles[t, i] = zyz_angles(u)
    return shadow.copy_with(angles=angles, note="virtual gate applied")
