"""Rotated surface-code layouts and logical-zero preparation.

d_code in {2, 3}; data qubits live on a d x d grid (row-major).  The
logical zero is prepared either by projector algebra (product of
(I + B_p)/sqrt(2) onto |0...0>) or by the measurement-assisted protocol:
one reusable ancilla measures each X-plaquette through a CNOT gadget and
adaptive Z corrections, from a GF(2) table, force every syndrome bit to
zero.  Both routes give the same state exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..simcore import (
    Circuit,
    Conditional,
    Measure,
    PauliString,
    Reset,
    StateVector,
    cx,
    h,
    run_circuit,
    z,
    zero_state,
)

_LAYOUTS = {
    2: {
        "x_plaquettes": [(0, 1, 2, 3)],
        "z_plaquettes": [(0, 1), (2, 3)],
        "logical_z": (0, 2),
        "logical_x": (0, 1),
    },
    3: {
        "x_plaquettes": [(0, 1, 3, 4), (4, 5, 7, 8), (1, 2), (6, 7)],
        "z_plaquettes": [(1, 2, 4, 5), (3, 4, 6, 7), (0, 3), (5, 8)],
        "logical_z": (3, 4, 5),
        "logical_x": (1, 4, 7),
    },
}


@dataclass(frozen=True)
class SurfaceCodeLayout:
    d_code: int
    n_data: int
    x_plaquettes: tuple[tuple[int, ...], ...]
    z_plaquettes: tuple[tuple[int, ...], ...]
    logical_z: tuple[int, ...]
    logical_x: tuple[int, ...]
    correction_basis: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def n_x_plaquettes(self) -> int:
        return len(self.x_plaquettes)

    def coords(self, q: int) -> tuple[int, int]:
        return divmod(q, self.d_code)

    def correction_support(self, syndrome) -> tuple[int, ...]:
        """Z-gate support cancelling the given syndrome bits."""
        acc = 0
        for p, bit in enumerate(syndrome):
            if bit:
                for q in self.correction_basis[p]:
                    acc ^= 1 << q
        return tuple(q for q in range(self.n_data) if (acc >> q) & 1)

    def to_dict(self) -> dict:
        return {
            "d_code": self.d_code,
            "n_data": self.n_data,
            "x_plaquettes": [list(p) for p in self.x_plaquettes],
            "z_plaquettes": [list(p) for p in self.z_plaquettes],
            "logical_z": list(self.logical_z),
            "logical_x": list(self.logical_x),
        }


def _solve_correction_basis(n: int, x_plaquettes) -> tuple[tuple[int, ...], ...]:
    """Per unit syndrome e_p, a Z-support with |z ^ p'| = delta_pp' (mod 2)."""
    rows = len(x_plaquettes)
    a = np.zeros((rows, n), dtype=np.uint8)
    for r, plq in enumerate(x_plaquettes):
        for q in plq:
            a[r, q] = 1
    basis = []
    for p in range(rows):
        aug = np.concatenate([a, np.eye(rows, dtype=np.uint8)[:, p : p + 1]], axis=1)
        m = aug.copy()
        pivots = []
        row = 0
        for col in range(n):
            hit = np.flatnonzero(m[row:, col]) + row
            if hit.size == 0:
                continue
            m[[row, hit[0]]] = m[[hit[0], row]]
            for r2 in range(rows):
                if r2 != row and m[r2, col]:
                    m[r2] ^= m[row]
            pivots.append(col)
            row += 1
            if row == rows:
                break
        if np.any(m[row:, -1]):
            raise RuntimeError("inconsistent syndrome system")
        zvec = np.zeros(n, dtype=np.uint8)
        for r2, col in enumerate(pivots):
            zvec[col] = m[r2, -1]
        basis.append(tuple(int(q) for q in np.flatnonzero(zvec)))
    return tuple(basis)


def surface_layout(d_code: int) -> SurfaceCodeLayout:
    if d_code not in _LAYOUTS:
        raise ValueError(f"unsupported code distance {d_code}")
    raw = _LAYOUTS[d_code]
    n = d_code * d_code
    x_p = tuple(tuple(p) for p in raw["x_plaquettes"])
    z_p = tuple(tuple(p) for p in raw["z_plaquettes"])
    for xp in x_p:
        for zp in z_p:
            if len(set(xp) & set(zp)) % 2 != 0:
                raise RuntimeError("X and Z plaquettes fail to commute")
    layout = SurfaceCodeLayout(
        d_code, n, x_p, z_p, tuple(raw["logical_z"]), tuple(raw["logical_x"]),
        _solve_correction_basis(n, x_p))
    return layout


def stabilizer_strings(layout: SurfaceCodeLayout) -> list[PauliString]:
    out = []
    for plq in layout.x_plaquettes:
        out.append(PauliString.from_sites(layout.n_data, {q: "X" for q in plq}))
    for plq in layout.z_plaquettes:
        out.append(PauliString.from_sites(layout.n_data, {q: "Z" for q in plq}))
    return out


def _projector_prepare(layout: SurfaceCodeLayout, syndrome, correct: bool) -> StateVector:
    n = layout.n_data
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[0] = 1.0
    idx = np.arange(1 << n)
    for plq, bit in zip(layout.x_plaquettes, syndrome):
        mask = 0
        for q in plq:
            mask |= 1 << q
        sign = -1.0 if bit else 1.0
        psi = (psi + sign * psi[idx ^ mask]) / np.sqrt(2.0)
    if correct:
        support = layout.correction_support(syndrome)
        if support:
            zmask = 0
            for q in support:
                zmask |= 1 << q
            signs = 1.0 - 2.0 * (np.bitwise_count(idx & zmask) & 1).astype(float)
            psi = psi * signs
    return StateVector(n, psi)


def _protocol_circuit(layout: SurfaceCodeLayout, syndrome=None, correct: bool = True) -> Circuit:
    n = layout.n_data
    anc = n
    circ = Circuit(n + 1)
    for p, plq in enumerate(layout.x_plaquettes):
        circ.append(h(anc))
        for q in plq:
            circ.append(cx(anc, q))
        circ.append(h(anc))
        forced = None if syndrome is None else (int(syndrome[p]),)
        circ.append(Measure((anc,), (f"m{p}",), forced=forced))
        circ.append(Reset(anc))
    if correct:
        for p in range(layout.n_x_plaquettes):
            for q in layout.correction_basis[p]:
                circ.append(Conditional(z(q), f"m{p}", 1))
    return circ


def prepare_logical_zero(layout: SurfaceCodeLayout, mode: str = "projector",
                         rng: np.random.Generator | None = None,
                         force_syndrome=None, correct: bool = True
                         ) -> tuple[StateVector, dict]:
    """Logical zero of the surface code; returns (state, info with syndrome).

    projector mode applies (I + (-1)^{m_p} B_p) products directly; protocol
    mode runs the measurement-assisted circuit with one reusable ancilla.
    Without correction the prepared state keeps its measured syndrome signs.
    """
    n_p = layout.n_x_plaquettes
    if mode == "projector":
        syndrome = tuple(force_syndrome) if force_syndrome is not None else (0,) * n_p
        state = _projector_prepare(layout, syndrome, correct)
        return state, {"syndrome": syndrome, "mode": mode}
    if mode != "protocol":
        raise ValueError(f"unknown preparation mode {mode!r}")
    if rng is None:
        rng = np.random.default_rng()
    circ = _protocol_circuit(layout, force_syndrome, correct)
    full, bits = run_circuit(zero_state(layout.n_data + 1), circ, rng=rng)
    n = layout.n_data
    amps = full.amplitudes[: 1 << n].copy()  # ancilla reset to |0>
    state = StateVector(n, amps)
    syndrome = tuple(bits[f"m{p}"] for p in range(n_p))
    return state, {"syndrome": syndrome, "mode": mode}
