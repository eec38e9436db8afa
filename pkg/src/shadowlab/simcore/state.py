"""Dense statevector container and basis-label helpers.

Qubit 0 is the least-significant bit of the amplitude index.  Basis labels
written as strings follow ket order: the rightmost character is qubit 0,
so ket("10") on two qubits is the basis index 2.
"""
from __future__ import annotations

import numpy as np

MAX_QUBITS = 20
NORM_TOL = 1e-10


class StateVector:
    """Normalised complex amplitude array over n qubits."""

    def __init__(self, n_qubits: int, amplitudes: np.ndarray | None = None, validate: bool = True):
        if not 1 <= n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
        self.n_qubits = n_qubits
        dim = 1 << n_qubits
        if amplitudes is None:
            amplitudes = np.zeros(dim, dtype=np.complex128)
            amplitudes[0] = 1.0
        else:
            amplitudes = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
            if amplitudes.shape[0] != dim:
                raise ValueError(f"expected {dim} amplitudes, got {amplitudes.shape[0]}")
        self.amplitudes = amplitudes
        if validate:
            self.check_norm()

    def check_norm(self, tol: float = NORM_TOL) -> None:
        norm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm - 1.0) > tol:
            raise ValueError(f"state norm deviates from 1 by {abs(norm - 1.0):.3e}")

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy(), validate=False)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __len__(self) -> int:
        return self.amplitudes.shape[0]


def zero_state(n_qubits: int) -> StateVector:
    return StateVector(n_qubits)


def ket(label: str) -> StateVector:
    """Basis state from a ket label, rightmost character = qubit 0."""
    n = len(label)
    idx = int(label, 2)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[idx] = 1.0
    return StateVector(n, amps, validate=False)


def basis_label(index: int, n_qubits: int) -> str:
    return format(index, f"0{n_qubits}b")


def fidelity(a: StateVector, b: StateVector) -> float:
    if a.n_qubits != b.n_qubits:
        raise ValueError("qubit count mismatch")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
