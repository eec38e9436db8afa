"""Four-qubit maximum-likelihood state tomography.

All 81 Pauli settings are measured; linear inversion is followed by the
eigenvalue simplex projection (the Frobenius-closest physical state).
"""
from __future__ import annotations

import itertools

import numpy as np

from ..simcore.pauli import single_qubit_matrix
from .mem import DIM, N_BITS, mitigate

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_SDG = np.diag([1.0, -1.0j]).astype(complex)
_BASIS_ROT = {"X": _H, "Y": _H @ _SDG, "Z": np.eye(2, dtype=complex)}

ALL_SETTINGS = tuple("".join(p) for p in itertools.product("XYZ", repeat=N_BITS))


def _setting_rotation(letters: str) -> np.ndarray:
    u = np.array([[1.0]], dtype=complex)
    for q in range(N_BITS):  # qubit 0 = least significant
        u = np.kron(_BASIS_ROT[letters[q]], u)
    return u


def setting_distribution(rho: np.ndarray, letters: str) -> np.ndarray:
    """Exact outcome distribution of the given Pauli-basis measurement."""
    u = _setting_rotation(letters)
    return np.clip(np.diag(u @ rho @ u.conj().T).real, 0.0, None)


def sample_setting(rho: np.ndarray, letters: str, shots: int, rng: np.random.Generator,
                   readout_rates: float | tuple[float, float] = 0.0) -> np.ndarray:
    """Empirical outcome frequencies with optional readout flips."""
    probs = setting_distribution(rho, letters)
    probs = probs / probs.sum()
    outcomes = rng.choice(DIM, size=shots, p=probs)
    if isinstance(readout_rates, tuple):
        p01, p10 = readout_rates
    else:
        p01 = p10 = float(readout_rates)
    if p01 > 0 or p10 > 0:
        bits = (outcomes[:, None] >> np.arange(N_BITS)) & 1
        u = rng.random((shots, N_BITS))
        flip = np.where(bits == 1, u < p10, u < p01)
        outcomes = ((bits ^ flip) << np.arange(N_BITS)).sum(axis=1)
    return np.bincount(outcomes, minlength=DIM) / shots


def collect_tomography(rho: np.ndarray, shots: int, rng: np.random.Generator,
                       readout_rates: float | tuple[float, float] = 0.0,
                       response: np.ndarray | None = None) -> dict[str, np.ndarray]:
    """Distributions for every setting; response, when given, applies MEM."""
    data = {}
    for letters in ALL_SETTINGS:
        p = sample_setting(rho, letters, shots, rng, readout_rates)
        if response is not None:
            p = mitigate(response, p)
        data[letters] = p
    return data


def exact_tomography(rho: np.ndarray) -> dict[str, np.ndarray]:
    return {letters: setting_distribution(rho, letters) for letters in ALL_SETTINGS}


def _parity_signs(support_mask: int) -> np.ndarray:
    idx = np.arange(DIM)
    return 1.0 - 2.0 * (np.bitwise_count(idx & support_mask) & 1).astype(float)


def pauli_expectations(data: dict[str, np.ndarray]) -> dict[str, float]:
    """<P> for every I/X/Y/Z string, averaged over compatible settings."""
    if set(data) != set(ALL_SETTINGS):
        raise ValueError("tomography data must cover all 81 Pauli settings")
    out: dict[str, float] = {"I" * N_BITS: 1.0}
    for letters in itertools.product("IXYZ", repeat=N_BITS):
        string = "".join(letters)
        if string == "I" * N_BITS:
            continue
        mask = 0
        for q, letter in enumerate(string):
            if letter != "I":
                mask |= 1 << q
        signs = _parity_signs(mask)
        vals = []
        for setting, p in data.items():
            if all(l == "I" or setting[q] == l for q, l in enumerate(string)):
                vals.append(float(signs @ p))
        out[string] = float(np.mean(vals))
    return out


def _pauli_dense(string: str) -> np.ndarray:
    out = np.array([[1.0]], dtype=complex)
    for q in range(N_BITS):
        out = np.kron(single_qubit_matrix(string[q]), out)
    return out


def linear_inversion(expectations: dict[str, float]) -> np.ndarray:
    rho = np.zeros((DIM, DIM), dtype=complex)
    for string, val in expectations.items():
        rho += val * _pauli_dense(string)
    return rho / DIM


def project_to_physical(rho: np.ndarray) -> np.ndarray:
    """Frobenius-closest density matrix: eigenvalue simplex projection."""
    herm = 0.5 * (rho + rho.conj().T)
    evals, evecs = np.linalg.eigh(herm)
    u = np.sort(evals)[::-1]
    css = np.cumsum(u)
    rho_idx = np.nonzero(u + (1.0 - css) / np.arange(1, len(u) + 1) > 0)[0][-1]
    theta = (1.0 - css[rho_idx]) / (rho_idx + 1)
    projected = np.maximum(evals + theta, 0.0)
    return (evecs * projected[None, :]) @ evecs.conj().T


def mle_qst(data: dict[str, np.ndarray]) -> np.ndarray:
    """Physical density matrix from tomography distributions."""
    return project_to_physical(linear_inversion(pauli_expectations(data)))
