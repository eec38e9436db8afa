"""Pauli strings with bit-mask evaluation.

Letters are site-ordered: PauliString("ZXZ") acts with Z on qubit 0,
X on qubit 1, Z on qubit 2.
"""
from __future__ import annotations

import numpy as np

_LETTERS = frozenset("IXYZ")

_SINGLE = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


class PauliString:
    def __init__(self, letters: str, coefficient: float = 1.0):
        letters = letters.upper()
        if not set(letters) <= _LETTERS:
            raise ValueError(f"invalid Pauli letters in {letters!r}")
        if not np.isfinite(coefficient):
            raise ValueError("coefficient must be finite")
        self.letters = letters
        self.coefficient = float(coefficient)

    @classmethod
    def from_sites(cls, n_qubits: int, sites: dict[int, str], coefficient: float = 1.0) -> "PauliString":
        letters = ["I"] * n_qubits
        for q, letter in sites.items():
            if not 0 <= q < n_qubits:
                raise ValueError(f"site {q} out of range")
            letters[q] = letter.upper()
        return cls("".join(letters), coefficient)

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.letters) if c != "I")

    @property
    def weight(self) -> int:
        return len(self.support)

    def masks(self) -> tuple[int, int, int]:
        """(xmask, signmask, n_y): P|b> = i^{n_y} (-1)^{popcount(b & signmask)} |b ^ xmask>."""
        xmask = signmask = n_y = 0
        for i, c in enumerate(self.letters):
            if c in ("X", "Y"):
                xmask |= 1 << i
            if c in ("Z", "Y"):
                signmask |= 1 << i
            if c == "Y":
                n_y += 1
        return xmask, signmask, n_y

    def matrix(self) -> np.ndarray:
        """Dense matrix (including coefficient); qubit 0 least significant."""
        out = np.array([[self.coefficient]], dtype=np.complex128)
        for c in self.letters:  # qubit 0 innermost factor
            out = np.kron(_SINGLE[c], out)
        return out

    def __repr__(self) -> str:
        return f"PauliString({self.letters!r}, {self.coefficient})"


def single_qubit_matrix(letter: str) -> np.ndarray:
    return _SINGLE[letter.upper()].copy()


def apply_pauli_batch(psi: np.ndarray, pauli: PauliString) -> np.ndarray:
    """Return P @ psi for a (batch, dim) buffer (coefficient included)."""
    xmask, signmask, n_y = pauli.masks()
    dim = psi.shape[1]
    idx = np.arange(dim)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & signmask) & 1).astype(np.float64)
    out = np.empty_like(psi)
    out[:, idx ^ xmask] = psi * signs
    phase = pauli.coefficient * (1j**n_y)
    # Y|b> = i(-1)^b |b^1>: the sign above is evaluated on the source index
    return out * phase


def expectation_batch(psi: np.ndarray, pauli: PauliString) -> np.ndarray:
    """<psi_r| P |psi_r> per row (real part; P Hermitian up to coefficient)."""
    pp = apply_pauli_batch(psi, pauli)
    vals = np.einsum("bi,bi->b", psi.conj(), pp)
    return vals
