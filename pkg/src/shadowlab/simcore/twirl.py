"""Pauli twirling of two-qubit Clifford gates (CX, CZ)."""
from __future__ import annotations

import itertools

import numpy as np

from .circuit import Circuit
from .gates import Gate, u1
from .pauli import single_qubit_matrix

_TWO_QUBIT_PAULIS = ["".join(p) for p in itertools.product("IXYZ", repeat=2)]


def _pair_matrix(letters: str) -> np.ndarray:
    # letters site-ordered on (q1, q2); matrix index = bit(q2)*2 + bit(q1)
    return np.kron(single_qubit_matrix(letters[1]), single_qubit_matrix(letters[0]))


def _conjugation_table(gate_matrix: np.ndarray) -> dict[str, str]:
    """Map P -> P' with G P G^dag = +-P' (sign is a global phase, dropped)."""
    table = {}
    for p in _TWO_QUBIT_PAULIS:
        conj = gate_matrix @ _pair_matrix(p) @ gate_matrix.conj().T
        for q in _TWO_QUBIT_PAULIS:
            qm = _pair_matrix(q)
            overlap = np.trace(qm.conj().T @ conj) / 4.0
            if abs(abs(overlap) - 1.0) < 1e-9:
                if abs(overlap.imag) > 1e-9:
                    raise RuntimeError("non-real conjugation phase for Clifford gate")
                table[p] = q
                break
        else:
            raise RuntimeError(f"conjugate of {p} is not a Pauli")
    return table


_TABLES: dict[str, dict[str, str]] = {}


def _table_for(gate: Gate) -> dict[str, str]:
    if gate.kind not in _TABLES:
        _TABLES[gate.kind] = _conjugation_table(gate.dense())
    return _TABLES[gate.kind]


def _pauli_gates(letters: str, qubits: tuple[int, int]) -> list[Gate]:
    out = []
    for q, letter in zip(qubits, letters):
        if letter != "I":
            out.append(u1(q, single_qubit_matrix(letter), letter.lower()))
    return out


def pauli_twirl(circuit: Circuit, rng: np.random.Generator) -> Circuit:
    """Wrap each CX/CZ with a random Pauli pair P, P' = G P G^dag.

    The twirled circuit's noiseless unitary equals the original up to a
    global phase.  Non-Clifford two-qubit gates are rejected.
    """
    out = Circuit(circuit.n_qubits)
    for op in circuit.ops:
        if isinstance(op, Gate) and len(op.qubits) == 2:
            if op.kind not in ("cx", "cz"):
                raise ValueError(f"cannot twirl non-Clifford two-qubit gate {op!r}")
            p = _TWO_QUBIT_PAULIS[rng.integers(0, 16)]
            p_after = _table_for(op)[p]
            for g in _pauli_gates(p, op.qubits):
                out.append(g)
            out.append(op)
            for g in _pauli_gates(p_after, op.qubits):
                out.append(g)
        else:
            out.append(op)
    return out
