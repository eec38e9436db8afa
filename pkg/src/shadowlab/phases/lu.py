"""Local random circuits: brickwork CX layers with Haar single-qubit gates."""
from __future__ import annotations

import numpy as np

from ..simcore import Circuit, cx, haar_single_qubit, u1
from .surface import SurfaceCodeLayout

MAX_DEPTH = 5


def _chain_bonds(n: int, layer: int) -> list[tuple[int, int]]:
    start = layer % 2
    return [(q, q + 1) for q in range(start, n - 1, 2)]


def _grid_bonds(d: int, layer: int) -> list[tuple[int, int]]:
    bonds = []
    mode = layer % 4
    for r in range(d):
        for c in range(d):
            q = r * d + c
            if mode in (0, 1) and c + 1 < d and c % 2 == mode % 2:
                bonds.append((q, q + 1))
            if mode in (2, 3) and r + 1 < d and r % 2 == mode % 2:
                bonds.append((q, q + d))
    return bonds


def local_random_circuit(target: int | SurfaceCodeLayout, depth: int,
                         rng: np.random.Generator) -> Circuit:
    """depth layers, each = Haar singles on every qubit + a CX bond layer.

    target: a qubit count (chain connectivity) or a surface-code layout
    (grid connectivity).  depth = 0 gives the empty circuit.
    """
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must be in [0, {MAX_DEPTH}]")
    if isinstance(target, SurfaceCodeLayout):
        n = target.n_data
        bond_fn = lambda layer: _grid_bonds(target.d_code, layer)
    else:
        n = int(target)
        bond_fn = lambda layer: _chain_bonds(n, layer)
    circ = Circuit(n)
    for layer in range(depth):
        for q in range(n):
            circ.append(u1(q, haar_single_qubit(rng), "haar"))
        for a, b in bond_fn(layer):
            if rng.random() < 0.5:
                a, b = b, a
            circ.append(cx(a, b))
    return circ
