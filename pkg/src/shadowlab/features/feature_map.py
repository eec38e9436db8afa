"""Renyi-2 subsystem-entropy feature vectors."""
from __future__ import annotations

import itertools

import numpy as np

from ..simcore import StateVector


def renyi2(rho: np.ndarray) -> float:
    """-log2 Tr(rho^2), clipped at 0 for float round-off on pure states."""
    rho = np.asarray(rho)
    purity = float(np.trace(rho @ rho).real)
    if purity > 1 + 1e-9:
        raise ValueError(f"purity {purity} exceeds 1")
    purity = min(purity, 1.0)
    if purity <= 0:
        raise ValueError("non-positive purity")
    return max(0.0, -float(np.log2(purity)))


def reduced_density_matrix(state: StateVector, keep: tuple[int, ...]) -> np.ndarray:
    """RDM of the kept qubits (ascending); lowest kept label becomes bit 0."""
    n = state.n_qubits
    keep = tuple(sorted(keep))
    rest = [q for q in range(n) if q not in keep]
    tensor = state.amplitudes.reshape((2,) * n)
    # axis i of the tensor is qubit n-1-i
    perm = [n - 1 - q for q in reversed(keep)] + [n - 1 - q for q in reversed(rest)]
    mat = tensor.transpose(perm).reshape(1 << len(keep), 1 << len(rest))
    return mat @ mat.conj().T


def partial_trace_dm(rho: np.ndarray, n: int, keep: tuple[int, ...]) -> np.ndarray:
    """Partial trace of a density matrix over the non-kept qubits."""
    keep = tuple(sorted(keep))
    cur = rho.reshape((2,) * (2 * n))
    axis_qubits = list(range(n - 1, -1, -1))
    for q in [q for q in range(n) if q not in keep]:
        i = axis_qubits.index(q)
        cur = np.trace(cur, axis1=i, axis2=i + len(axis_qubits))
        axis_qubits.pop(i)
    dim = 1 << len(axis_qubits)
    return cur.reshape(dim, dim)


def feature_subsets(subsystem: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All non-empty subsets, ordered by size then lexicographically."""
    subsystem = tuple(subsystem)
    out = []
    for size in range(1, len(subsystem) + 1):
        out.extend(itertools.combinations(subsystem, size))
    return out


def feature_map(source: StateVector | np.ndarray, subsystem: tuple[int, ...],
                n_qubits: int | None = None) -> np.ndarray:
    """15 subsystem Renyi-2 entropies in subset order.

    source: a global statevector (exact path) or a 2^4 x 2^4 density matrix
    of the subsystem itself (measured path, e.g. from tomography), in which
    case sub-RDMs come from partial traces of that state.
    """
    subsystem = tuple(sorted(subsystem))
    if len(subsystem) != 4:
        raise ValueError("feature map expects a 4-qubit subsystem")
    subsets = feature_subsets(subsystem)
    values = np.empty(len(subsets))
    if isinstance(source, StateVector):
        rho_full = reduced_density_matrix(source, subsystem)
    else:
        rho_full = np.asarray(source, dtype=complex)
        if rho_full.shape != (16, 16):
            raise ValueError("measured-path source must be the 16x16 subsystem state")
    index_of = {q: k for k, q in enumerate(subsystem)}
    for row, subset in enumerate(subsets):
        local = tuple(index_of[q] for q in subset)
        rho_s = partial_trace_dm(rho_full, 4, local)
        values[row] = renyi2(rho_s)
    return values
