"""Gate objects and single-qubit unitary utilities."""
from __future__ import annotations

import numpy as np

from .pauli import PauliString, single_qubit_matrix

UNITARY_TOL = 1e-10


def _check_unitary(m: np.ndarray, tol: float = UNITARY_TOL) -> None:
    d = m.shape[0]
    if np.max(np.abs(m.conj().T @ m - np.eye(d))) > tol:
        raise ValueError("matrix is not unitary within tolerance")


class Gate:
    """A unitary on one or two qubits.

    kind is one of {"u1", "u2", "cx", "cz"}.  For "u2" the matrix index is
    bit(qubits[1]) * 2 + bit(qubits[0]).
    """

    def __init__(self, kind: str, qubits: tuple[int, ...], matrix: np.ndarray | None = None,
                 label: str = "", validate: bool = True):
        if len(set(qubits)) != len(qubits):
            raise ValueError("target qubits must be distinct")
        if any(q < 0 for q in qubits):
            raise ValueError("negative qubit index")
        if kind in ("u1", "u2") and matrix is None:
            raise ValueError(f"{kind} gate needs a matrix")
        if validate and matrix is not None:
            _check_unitary(np.asarray(matrix))
        self.kind = kind
        self.qubits = tuple(qubits)
        self.matrix = None if matrix is None else np.asarray(matrix, dtype=np.complex128)
        self.label = label or kind

    def dense(self) -> np.ndarray:
        if self.kind == "cx":
            m = np.eye(4, dtype=np.complex128)
            # index = bit(target)*2 + bit(control)
            m[[1, 3]] = m[[3, 1]]
            return m
        if self.kind == "cz":
            return np.diag([1, 1, 1, -1]).astype(np.complex128)
        return self.matrix.copy()

    def __repr__(self) -> str:
        return f"Gate({self.label}, qubits={self.qubits})"


def u1(q: int, matrix: np.ndarray, label: str = "u1") -> Gate:
    return Gate("u1", (q,), matrix, label)


def u2(q1: int, q2: int, matrix: np.ndarray, label: str = "u2") -> Gate:
    return Gate("u2", (q1, q2), matrix, label)


def x(q: int) -> Gate:
    return Gate("u1", (q,), single_qubit_matrix("X"), "x")


def y(q: int) -> Gate:
    return Gate("u1", (q,), single_qubit_matrix("Y"), "y")


def z(q: int) -> Gate:
    return Gate("u1", (q,), single_qubit_matrix("Z"), "z")


def h(q: int) -> Gate:
    m = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
    return Gate("u1", (q,), m, "h")


def ry(q: int, theta: float) -> Gate:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return Gate("u1", (q,), np.array([[c, -s], [s, c]], dtype=np.complex128), f"ry({theta:.6g})")


def rz(q: int, theta: float) -> Gate:
    e = np.exp(-0.5j * theta)
    return Gate("u1", (q,), np.diag([e, e.conjugate()]).astype(np.complex128), f"rz({theta:.6g})")


def cx(control: int, target: int) -> Gate:
    return Gate("cx", (control, target))


def cz(q1: int, q2: int) -> Gate:
    return Gate("cz", (q1, q2))


def pauli_exp(qubits: tuple[int, ...], letters: str, theta: float) -> Gate:
    """exp(i * theta * P) for P on one or two qubits (letters site-ordered on qubits)."""
    if len(qubits) != len(letters) or len(qubits) not in (1, 2):
        raise ValueError("pauli_exp acts on one or two qubits")
    p = PauliString(letters).matrix()
    d = p.shape[0]
    m = np.cos(theta) * np.eye(d) + 1j * np.sin(theta) * p
    kind = "u1" if d == 2 else "u2"
    return Gate(kind, qubits, m, f"exp(i{theta:.6g}{letters})")


def haar_single_qubit(rng: np.random.Generator) -> np.ndarray:
    """Haar-random U(2) via QR of a complex Gaussian with phase fixing."""
    zmat = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(zmat)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_zyz_batch(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Haar-distributed ZYZ angles (..., 3), up to an irrelevant global phase.

    cos(theta) uniform on [-1, 1] (the sin-theta Haar density), phi and lam
    uniform on [0, 2pi); reproduces the QR sampler's distribution modulo
    global phase, which no measurement statistic sees.
    """
    theta = np.arccos(1.0 - 2.0 * rng.random(shape))
    phi = rng.uniform(0.0, 2.0 * np.pi, shape)
    lam = rng.uniform(0.0, 2.0 * np.pi, shape)
    return np.stack([theta, phi, lam], axis=-1)


def zyz_angles(u: np.ndarray) -> tuple[float, float, float]:
    """(theta, phi, lam) with U ~ Rz(phi) Ry(theta) Rz(lam) up to global phase."""
    u = np.asarray(u, dtype=np.complex128)
    det = np.linalg.det(u)
    su = u / np.sqrt(det)
    theta = 2.0 * np.arctan2(abs(su[1, 0]), abs(su[0, 0]))
    ang_pd = np.angle(su[1, 1])  # (phi + lam)/2
    ang_md = np.angle(su[1, 0])  # (phi - lam)/2
    phi = ang_pd + ang_md
    lam = ang_pd - ang_md
    return float(theta), float(phi), float(lam)


def u_from_zyz(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [
            [np.exp(-0.5j * (phi + lam)) * c, -np.exp(-0.5j * (phi - lam)) * s],
            [np.exp(0.5j * (phi - lam)) * s, np.exp(0.5j * (phi + lam)) * c],
        ],
        dtype=np.complex128,
    )
