"""Dense statevector simulation with stochastic Pauli-trajectory noise."""

from .circuit import Circuit, Conditional, Measure, Reset
from .engine import (
    apply_gate,
    expectation,
    run_circuit,
    run_circuit_batch,
    sample_counts,
    sample_outcomes,
)
from .gates import (
    Gate,
    cx,
    cz,
    h,
    haar_single_qubit,
    pauli_exp,
    ry,
    rz,
    u1,
    u2,
    u_from_zyz,
    x,
    y,
    z,
    zyz_angles,
)
from .noise import NOISELESS, NoiseModel
from .pauli import PauliString
from .state import StateVector, basis_label, fidelity, ket, zero_state
from .twirl import pauli_twirl

__all__ = [
    "Circuit", "Conditional", "Measure", "Reset",
    "apply_gate", "expectation", "run_circuit", "run_circuit_batch",
    "sample_counts", "sample_outcomes",
    "Gate", "cx", "cz", "h", "haar_single_qubit", "pauli_exp", "ry", "rz",
    "u1", "u2", "u_from_zyz", "x", "y", "z", "zyz_angles",
    "NOISELESS", "NoiseModel", "PauliString",
    "StateVector", "basis_label", "fidelity", "ket", "zero_state",
    "pauli_twirl",
]
