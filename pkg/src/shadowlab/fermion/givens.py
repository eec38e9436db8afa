"""Givens-rotation networks: Slater-determinant compilation and recompiling.

A network is an ordered list of adjacent-pair rotations (p, theta); the
compiled circuit applies them in order to the half-filled Fock state
|1...10...0>.  Networks are found by peeling orbital rows with free row
gauges and M(N-M) column rotations, the minimal count for a Slater
determinant on N modes with M particles.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..simcore import Circuit, cx, h, ry, x, z

ORTHONORMAL_TOL = 1e-10


@dataclass(frozen=True)
class GivensNetwork:
    n_modes: int
    rotations: tuple[tuple[int, float], ...]

    def __post_init__(self):
        for p, _ in self.rotations:
            if not 0 <= p < self.n_modes - 1:
                raise ValueError(f"rotation pair ({p},{p + 1}) out of range")

    def __len__(self) -> int:
        return len(self.rotations)


def rotation_matrix(n: int, p: int, theta: float) -> np.ndarray:
    """Embedded single-particle rotation: row i = image of creation op i."""
    r = np.eye(n)
    c, s = np.cos(theta), np.sin(theta)
    r[p, p] = c
    r[p, p + 1] = -s
    r[p + 1, p] = s
    r[p + 1, p + 1] = c
    return r


def single_particle_matrix(network: GivensNetwork) -> np.ndarray:
    """R_total with U a_i^dag U^dag = sum_j R_ij a_j^dag.

    Composition: for U = U_2 U_1 (U_1 applied first), R_total = R_1 R_2,
    so later rotations multiply on the right.
    """
    r = np.eye(network.n_modes)
    for p, theta in network.rotations:
        r = r @ rotation_matrix(network.n_modes, p, theta)
    return r


def block_unitary(theta: float) -> np.ndarray:
    """4x4 two-qubit matrix of one rotation block (index = bit(p+1)*2 + bit(p)).

    Chosen so the block maps a_p^dag -> cos(theta) a_p^dag - sin(theta)
    a_{p+1}^dag, i.e. its single-particle matrix is rotation_matrix(theta).
    """
    c, s = np.cos(theta), np.sin(theta)
    g = np.eye(4, dtype=np.complex128)
    g[1, 1], g[1, 2], g[2, 1], g[2, 2] = c, s, -s, c
    return g


def _peel_right(q: np.ndarray) -> list[tuple[int, float]]:
    """Column rotations (application order) reducing q to rows ~ e_{N-1-r}.

    Step k peels row k: a free row gauge (mixing the still-active rows)
    clears its first m-k-1 entries, then a rightward cascade of adjacent
    column rotations pushes its weight to column n-1-k, which other rows
    then avoid by orthonormality.
    """
    q = q.copy()
    m, n = q.shape
    rots: list[tuple[int, float]] = []
    for k in range(m):
        active = m - k  # rows k..m-1
        lead = active - 1  # columns 0..lead-1 of row k are gauged away
        if lead > 0:
            block = q[k:m, :lead]
            _, sv, vt = np.linalg.svd(block.T, full_matrices=True)
            kernel = vt[len(sv[sv > 1e-12]):]
            # prefer the kernel direction closest to "leave row k alone"
            w = kernel.T @ kernel[:, 0]
            u = w / np.linalg.norm(w) if np.linalg.norm(w) > 1e-9 else kernel[0]
            stack = np.column_stack([u, np.eye(active)])
            basis, _ = np.linalg.qr(stack)
            lmat = np.column_stack([basis[:, 0], basis[:, 1:active]]).T
            q[k:m] = lmat @ q[k:m]
        for j in range(lead, n - 1 - k):
            a, b = q[k, j], q[k, j + 1]
            if np.hypot(a, b) < 1e-14:
                theta = 0.0
            else:
                theta = float(np.arctan2(-a, b))
            c, s = np.cos(theta), np.sin(theta)
            col_j = c * q[:, j] + s * q[:, j + 1]
            col_j1 = -s * q[:, j] + c * q[:, j + 1]
            q[:, j], q[:, j + 1] = col_j, col_j1
            rots.append((j, theta))
    return rots


def givens_decompose(q: np.ndarray) -> GivensNetwork:
    """Compile orbitals Q (M x N, orthonormal rows) into an adjacent network.

    The returned network applied to |1^M 0^(N-M)> prepares the Slater
    determinant with orbital projector Q^T Q; it has exactly M(N-M)
    rotations.
    """
    q = np.asarray(q, dtype=float)
    m, n = q.shape
    if np.max(np.abs(q @ q.T - np.eye(m))) > ORTHONORMAL_TOL:
        raise ValueError("orbital rows are not orthonormal")
    rots_mirror = _peel_right(q[:, ::-1])
    # mirrored pair (j, j+1) maps to true pair (n-2-j, .+1) with the local
    # basis swapped (angle negated); the circuit applies the transposed
    # rotations in reverse, which restores the original angle sign.
    network = tuple((n - 2 - j, theta) for j, theta in reversed(rots_mirror))
    return GivensNetwork(n, network)


def givens_to_circuit(network: GivensNetwork) -> Circuit:
    """Two CNOTs and an RY pair per rotation (with fixed Clifford dressing)."""
    circ = Circuit(network.n_modes)
    for p, theta in network.rotations:
        for g in block_gates(p, theta):
            circ.append(g)
    return circ


def block_gates(p: int, theta: float) -> list:
    """Gate list of one rotation block on modes (p, p+1)."""
    return [
        z(p), h(p + 1),
        cx(p + 1, p),
        ry(p, -theta), ry(p + 1, -theta),
        cx(p + 1, p),
        z(p), h(p + 1),
    ]


def preparation_circuit(network: GivensNetwork, n_occ: int) -> Circuit:
    """X gates filling the lowest n_occ modes, then the rotation blocks."""
    circ = Circuit(network.n_modes)
    for q in range(n_occ):
        circ.append(x(q))
    for op in givens_to_circuit(network).ops:
        circ.append(op)
    return circ


def recompile_parity(network: GivensNetwork, pairs: list[tuple[int, int]],
                     n_occ: int | None = None) -> tuple[GivensNetwork, np.ndarray, list]:
    """Absorb a relabel + parity-rotation layer into a fresh network.

    pairs are mode pairs (i, j), i < j, mutually disjoint; each is routed to
    adjacent positions (2t, 2t+1) by a signed-permutation layer, followed by
    a parity-basis rotation on those positions.  The absorbed layer changes
    the prepared state exactly as appending it would, at an unchanged
    rotation count.  Returns (network', R_layer, slots) with slots[t] =
    ((position pair), estimator sign) for reading out pair t.
    """
    n = network.n_modes
    if n_occ is None:
        n_occ = n // 2
    q = single_particle_matrix(network)[:n_occ]
    r_layer, slots = parity_layer_matrix(n, pairs)
    return givens_decompose(q @ r_layer), r_layer, slots


def parity_layer_matrix(n: int, pairs: list[tuple[int, int]]) -> tuple[np.ndarray, list]:
    """Single-particle matrix of relabel-to-adjacent + G(-pi/4) parity rotations."""
    flat = [m for pr in pairs for m in pr]
    if len(set(flat)) != len(flat):
        raise ValueError("measured pairs must be disjoint")
    for i, j in pairs:
        if not 0 <= i < j < n:
            raise ValueError(f"invalid pair ({i},{j})")
    transpositions = relabel_transpositions(n, pairs)
    r = np.eye(n)
    for p in transpositions:
        r = r @ rotation_matrix(n, p, np.pi / 2)
    for t in range(len(pairs)):
        r = r @ rotation_matrix(n, 2 * t, -np.pi / 4)
    slots = []
    for t, (i, j) in enumerate(pairs):
        si = r_sign_of_permutation(r, i, j, t)
        slots.append(((2 * t, 2 * t + 1), si))
    return r, slots


def relabel_transpositions(n: int, pairs: list[tuple[int, int]]) -> list[int]:
    """Adjacent transpositions realising: pair t -> positions (2t, 2t+1)."""
    target = {}
    for t, (i, j) in enumerate(pairs):
        target[i] = 2 * t
        target[j] = 2 * t + 1
    rest = sorted(m for m in range(n) if m not in target)
    free = sorted(set(range(n)) - set(target.values()))
    for m, pos in zip(rest, free):
        target[m] = pos
    current = list(range(n))  # current[pos] = original mode at pos
    desired = [None] * n
    for mode, pos in target.items():
        desired[pos] = mode
    swaps = []
    # selection-sort with adjacent swaps (stable, deterministic)
    for pos in range(n):
        src = current.index(desired[pos])
        while src > pos:
            current[src - 1], current[src] = current[src], current[src - 1]
            swaps.append(src - 1)
            src -= 1
    return swaps


def r_sign_of_permutation(r: np.ndarray, i: int, j: int, t: int) -> float:
    """Sign of the estimator for pair t given the layer matrix r.

    The parity statistic at positions (2t, 2t+1) of the transformed state
    estimates (R^T C R)[2t, 2t+1]; for the relabel part a signed
    permutation, that equals sign * C[i, j].
    """
    # strip the final parity rotation: positions (2t, 2t+1) were fed by
    # modes i -> 2t (sign a), j -> 2t+1 (sign b) before the G(-pi/4) block
    rp = r @ rotation_matrix(r.shape[0], 2 * t, np.pi / 4)  # undo parity rotation
    a = rp[i, 2 * t]
    b = rp[j, 2 * t + 1]
    if abs(abs(a) - 1.0) > 1e-9 or abs(abs(b) - 1.0) > 1e-9:
        raise RuntimeError("relabel layer is not a signed permutation")
    return float(np.sign(a) * np.sign(b))
