"""Statevector execution: gates, noisy trajectories, expectations, sampling.

Trajectory noise semantics: after each gate, with probability p_single
(p_two) a uniformly random non-identity Pauli is applied on the gate's
support.  Readout errors flip recorded bits independently; the global
depolarizing channel replaces an outcome with a uniform bitstring.
"""
from __future__ import annotations

import numpy as np

from .. import _core
from .circuit import Circuit, Conditional, Measure, Reset
from .gates import Gate
from .noise import NOISELESS, NoiseModel
from .pauli import PauliString, expectation_batch
from .state import StateVector, basis_label

_PAULI_1Q = ["X", "Y", "Z"]
_PAULI_2Q = [a + b for a in "IXYZ" for b in "IXYZ"][1:]  # 15 non-identity pairs


def _apply_gate_batch(psi: np.ndarray, gate: Gate) -> None:
    if gate.kind == "u1":
        _core.apply_1q(psi, gate.qubits[0], gate.matrix)
    elif gate.kind == "u2":
        _core.apply_2q(psi, gate.qubits[0], gate.qubits[1], gate.matrix)
    elif gate.kind == "cx":
        _core.apply_cx(psi, gate.qubits[0], gate.qubits[1])
    elif gate.kind == "cz":
        _core.apply_cz(psi, gate.qubits[0], gate.qubits[1])
    else:
        raise ValueError(f"unknown gate kind {gate.kind}")


def _apply_pauli_rows(psi: np.ndarray, rows: np.ndarray, qubits: tuple[int, ...], letters: str) -> None:
    """Apply a Pauli (phases dropped; irrelevant for trajectories) to selected rows."""
    sub = psi[rows]
    for q, letter in zip(qubits, letters):
        if letter == "I":
            continue
        mat = PauliString(letter).matrix()
        _core.apply_1q(sub, q, mat)
    psi[rows] = sub


def _depolarize(psi: np.ndarray, qubits: tuple[int, ...], p: float, rng: np.random.Generator) -> None:
    if p <= 0.0:
        return
    batch = psi.shape[0]
    hit = np.flatnonzero(rng.random(batch) < p)
    if hit.size == 0:
        return
    table = _PAULI_1Q if len(qubits) == 1 else _PAULI_2Q
    choices = rng.integers(0, len(table), size=hit.size)
    for k in np.unique(choices):
        rows = hit[choices == k]
        _apply_pauli_rows(psi, rows, qubits, table[k])


def _measure_qubit(psi: np.ndarray, q: int, rng: np.random.Generator,
                   forced: int | None = None) -> np.ndarray:
    """Collapse qubit q on every row; returns outcomes (batch,) int8."""
    b, n = psi.shape
    view = psi.reshape(b, n >> (q + 1), 2, 1 << q)
    p1 = np.einsum("bhl->b", np.abs(view[:, :, 1, :]) ** 2).real
    p1 = np.clip(p1, 0.0, 1.0)
    if forced is None:
        outcomes = (rng.random(b) < p1).astype(np.int8)
    else:
        outcomes = np.full(b, forced, dtype=np.int8)
        probs = np.where(outcomes == 1, p1, 1.0 - p1)
        if np.any(probs < 1e-12):
            raise ValueError(f"forced outcome {forced} on qubit {q} has near-zero probability")
    keep1 = outcomes == 1
    view[keep1, :, 0, :] = 0.0
    view[~keep1, :, 1, :] = 0.0
    norms = np.sqrt(np.einsum("bhsl->b", np.abs(view) ** 2).real)
    psi /= norms[:, None]
    return outcomes


def run_circuit_batch(psi: np.ndarray, circuit: Circuit, noise: NoiseModel = NOISELESS,
                      rng: np.random.Generator | None = None) -> dict[str, np.ndarray]:
    """Execute circuit on a (batch, dim) buffer in place; returns recorded bits."""
    if rng is None:
        rng = np.random.default_rng()
    circuit.validate_conditions()
    p01, p10 = noise.readout_rates
    bits: dict[str, np.ndarray] = {}
    for op in circuit.ops:
        if isinstance(op, Gate):
            _apply_gate_batch(psi, op)
            p = noise.p_single if len(op.qubits) == 1 else noise.p_two
            _depolarize(psi, op.qubits, p, rng)
        elif isinstance(op, Measure):
            for q, key, forced in zip(op.qubits, op.keys,
                                      op.forced or (None,) * len(op.qubits)):
                outcome = _measure_qubit(psi, q, rng, forced)
                if p01 > 0 or p10 > 0:
                    flip_p = np.where(outcome == 1, p10, p01)
                    flips = rng.random(psi.shape[0]) < flip_p
                    outcome = np.where(flips, 1 - outcome, outcome).astype(np.int8)
                bits[key] = outcome
        elif isinstance(op, Reset):
            outcome = _measure_qubit(psi, op.qubit, rng)
            rows = np.flatnonzero(outcome == 1)
            if rows.size:
                _apply_pauli_rows(psi, rows, (op.qubit,), "X")
        elif isinstance(op, Conditional):
            rows = np.flatnonzero(bits[op.key] == op.value)
            if rows.size:
                sub = psi[rows]
                _apply_gate_batch(sub, op.gate)
                psi[rows] = sub
        else:
            raise TypeError(f"unsupported op {op!r}")
    return bits


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    if any(q >= state.n_qubits for q in gate.qubits):
        raise ValueError(f"gate qubits {gate.qubits} out of range for n={state.n_qubits}")
    out = state.copy()
    _apply_gate_batch(out.amplitudes.reshape(1, -1), gate)
    return out


def run_circuit(state: StateVector, circuit: Circuit, noise: NoiseModel = NOISELESS,
                rng: np.random.Generator | None = None) -> tuple[StateVector, dict[str, int]]:
    """Single-trajectory execution; returns (final state, recorded bits)."""
    if circuit.n_qubits != state.n_qubits:
        raise ValueError("circuit/state qubit count mismatch")
    out = state.copy()
    bits = run_circuit_batch(out.amplitudes.reshape(1, -1), circuit, noise, rng)
    return out, {k: int(v[0]) for k, v in bits.items()}


def expectation(state: StateVector, pauli: PauliString) -> float:
    """<psi|P|psi>, real for Hermitian P."""
    if pauli.n_qubits != state.n_qubits:
        raise ValueError("operator/state length mismatch")
    val = expectation_batch(state.amplitudes.reshape(1, -1), pauli)[0]
    if abs(val.imag) > 1e-10:
        raise ValueError(f"non-real expectation {val} for Pauli string")
    return float(val.real)


def sample_outcomes(state: StateVector, shots: int, rng: np.random.Generator,
                    noise: NoiseModel = NOISELESS) -> np.ndarray:
    """Sample basis-state indices with readout/global noise applied."""
    if shots <= 0:
        raise ValueError("shots must be positive")
    probs = state.probabilities()
    cum = np.cumsum(probs)
    cum /= cum[-1]
    outcomes = np.searchsorted(cum, rng.random(shots), side="right")
    np.clip(outcomes, 0, len(probs) - 1, out=outcomes)
    n = state.n_qubits
    p01, p10 = noise.readout_rates
    if p01 > 0 or p10 > 0:
        bits = (outcomes[:, None] >> np.arange(n)) & 1
        r = rng.random((shots, n))
        flip = np.where(bits == 1, r < p10, r < p01)
        outcomes = ((bits ^ flip) << np.arange(n)).sum(axis=1)
    if noise.p_global > 0:
        replace = rng.random(shots) < noise.p_global
        outcomes = np.where(replace, rng.integers(0, 1 << n, size=shots), outcomes)
    return outcomes


def sample_counts(state: StateVector, shots: int, rng: np.random.Generator,
                  noise: NoiseModel = NOISELESS) -> dict[str, int]:
    """Histogram over bitstring labels (rightmost character = qubit 0)."""
    outcomes = sample_outcomes(state, shots, rng, noise)
    values, counts = np.unique(outcomes, return_counts=True)
    n = state.n_qubits
    return {basis_label(int(v), n): int(c) for v, c in zip(values, counts)}
