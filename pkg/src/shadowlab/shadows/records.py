"""Shadow sets: per-record random single-qubit unitaries and outcomes.

Unitaries are stored as ZYZ Euler angles (theta, phi, lam) per qubit, which
reconstruct exactly unitary 2x2 matrices; outcomes are per-qubit bits.
"""
from __future__ import annotations

import numpy as np

from ..simcore.gates import u_from_zyz


class ShadowSet:
    def __init__(self, n_qubits: int, angles: np.ndarray, outcomes: np.ndarray,
                 provenance: dict | None = None):
        angles = np.asarray(angles, dtype=np.float64)
        outcomes = np.asarray(outcomes, dtype=np.uint8)
        if angles.ndim != 3 or angles.shape[2] != 3 or angles.shape[1] != n_qubits:
            raise ValueError("angles must be (T, n_qubits, 3)")
        if outcomes.shape != angles.shape[:2]:
            raise ValueError("outcomes must be (T, n_qubits)")
        if angles.shape[0] < 1:
            raise ValueError("a shadow set needs at least one record")
        self.n_qubits = n_qubits
        self.angles = angles
        self.outcomes = outcomes
        self.provenance = dict(provenance or {})
        self._rows: np.ndarray | None = None

    @property
    def n_records(self) -> int:
        return self.angles.shape[0]

    def digest(self) -> bytes:
        """Content hash, used to order kernel arguments canonically."""
        if not hasattr(self, "_digest"):
            import hashlib

            h = hashlib.sha1()
            h.update(self.angles.tobytes())
            h.update(self.outcomes.tobytes())
            self._digest = h.digest()
        return self._digest

    def unitary(self, t: int, i: int) -> np.ndarray:
        return u_from_zyz(*self.angles[t, i])

    def rows(self) -> np.ndarray:
        """(T, n, 2) complex rows <b_i|U_i per record and qubit (cached)."""
        if self._rows is None:
            theta = self.angles[..., 0]
            phi = self.angles[..., 1]
            lam = self.angles[..., 2]
            c, s = np.cos(theta / 2), np.sin(theta / 2)
            row0 = np.stack(
                [np.exp(-0.5j * (phi + lam)) * c, -np.exp(-0.5j * (phi - lam)) * s],
                axis=-1)
            row1 = np.stack(
                [np.exp(0.5j * (phi - lam)) * s, np.exp(0.5j * (phi + lam)) * c],
                axis=-1)
            b = self.outcomes[..., None].astype(bool)
            self._rows = np.ascontiguousarray(np.where(b, row1, row0))
        return self._rows

    def snapshot(self, t: int, i: int) -> np.ndarray:
        """2x2 single-qubit snapshot 3 U^dag |b><b| U - I."""
        v = self.rows()[t, i]
        return 3.0 * np.outer(v.conj(), v) - np.eye(2)

    def copy_with(self, angles: np.ndarray | None = None, note: str | None = None) -> "ShadowSet":
        prov = dict(self.provenance)
        if note:
            prov.setdefault("notes", []).append(note) if isinstance(
                prov.get("notes"), list) else prov.update(notes=[note])
        return ShadowSet(self.n_qubits,
                         self.angles if angles is None else angles,
                         self.outcomes, prov)


class LocalObservable:
    """Dense Hermitian observable on an explicit support of <= 4 qubits.

    Matrix index convention: the first (lowest) support qubit is the least
    significant bit.
    """

    def __init__(self, support: tuple[int, ...], matrix: np.ndarray):
        support = tuple(support)
        if len(support) > 4 or len(support) == 0:
            raise ValueError("support must hold between 1 and 4 qubits")
        if sorted(support) != list(support):
            raise ValueError("support must be sorted ascending")
        matrix = np.asarray(matrix, dtype=np.complex128)
        dim = 1 << len(support)
        if matrix.shape != (dim, dim):
            raise ValueError(f"matrix must be {dim}x{dim} for this support")
        if np.max(np.abs(matrix - matrix.conj().T)) > 1e-10:
            raise ValueError("observable must be Hermitian")
        self.support = support
        self.matrix = matrix

    @property
    def locality(self) -> int:
        return len(self.support)

    def infinity_norm(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvalsh(self.matrix))))
