"""Circuits: ordered gates plus mid-circuit measurement/reset/conditionals."""
from __future__ import annotations

from .gates import Gate


class Measure:
    """Measure qubits in the computational basis, storing bits under keys.

    forced, when given, pins the outcome per qubit (used by preparation
    tests that need a specific syndrome); it is an error to force an
    outcome of near-zero probability.
    """

    def __init__(self, qubits: tuple[int, ...], keys: tuple[str, ...], forced: tuple[int, ...] | None = None):
        if len(qubits) != len(keys):
            raise ValueError("one key per measured qubit")
        if forced is not None and len(forced) != len(qubits):
            raise ValueError("one forced outcome per measured qubit")
        self.qubits = tuple(qubits)
        self.keys = tuple(keys)
        self.forced = None if forced is None else tuple(int(b) for b in forced)


class Reset:
    def __init__(self, qubit: int):
        self.qubit = qubit


class Conditional:
    """Apply gate only on trajectories where a recorded bit equals value."""

    def __init__(self, gate: Gate, key: str, value: int = 1):
        self.gate = gate
        self.key = key
        self.value = int(value)


class Circuit:
    def __init__(self, n_qubits: int, ops: list | None = None):
        self.n_qubits = n_qubits
        self.ops = []
        for op in ops or []:
            self.append(op)

    def append(self, op) -> "Circuit":
        if isinstance(op, Gate):
            qubits = op.qubits
        elif isinstance(op, Measure):
            qubits = op.qubits
        elif isinstance(op, Reset):
            qubits = (op.qubit,)
        elif isinstance(op, Conditional):
            qubits = op.gate.qubits
        else:
            raise TypeError(f"unsupported op {op!r}")
        if any(not 0 <= q < self.n_qubits for q in qubits):
            raise ValueError(f"qubit index out of range in {op!r}")
        self.ops.append(op)
        return self

    def validate_conditions(self) -> None:
        seen: set[str] = set()
        for op in self.ops:
            if isinstance(op, Measure):
                seen.update(op.keys)
            elif isinstance(op, Conditional) and op.key not in seen:
                raise ValueError(f"condition key {op.key!r} referenced before measured")

    def gates(self) -> list[Gate]:
        return [op for op in self.ops if isinstance(op, Gate)]

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)
