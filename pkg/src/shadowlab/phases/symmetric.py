"""Symmetry-respecting local random circuits (brickwork of Pauli exponentials)."""
from __future__ import annotations

import numpy as np

from ..simcore import Circuit, pauli_exp

SYMMETRY_SETS = {
    # two-qubit generator letters, site-ordered on the pair
    "Z2xZ2": ("II", "XI", "IX", "XX"),
    "TRS": ("II", "ZI", "IZ", "ZY", "YZ", "ZX", "XZ"),
    "none": tuple(a + b for a in "IXYZ" for b in "IXYZ"),
}


def symmetry_generators(n: int):
    """X_even and X_odd Pauli strings (the protected Z2 x Z2 generators)."""
    from ..simcore import PauliString

    even = PauliString.from_sites(n, {q: "X" for q in range(0, n, 2)})
    odd = PauliString.from_sites(n, {q: "X" for q in range(1, n, 2)})
    return even, odd


def symmetric_random_circuit(n: int, symmetry: str, rng: np.random.Generator,
                             layers: int = 2) -> Circuit:
    """Brickwork layers of exp(i theta P), P drawn from the symmetry's set.

    Layer 0 acts on pairs (0,1), (2,3), ...; layer 1 on (1,2), (3,4), ...,
    (n-1, 0) with periodic wrap; theta is uniform on [0, 2pi).
    """
    if symmetry not in SYMMETRY_SETS:
        raise ValueError(f"unknown symmetry tag {symmetry!r}")
    if n % 2 != 0:
        raise ValueError("brickwork layers need an even qubit count")
    pset = SYMMETRY_SETS[symmetry]
    circ = Circuit(n)
    for layer in range(layers):
        if layer % 2 == 0:
            pairs = [(q, q + 1) for q in range(0, n, 2)]
        else:
            pairs = [(q, (q + 1) % n) for q in range(1, n, 2)]
        for pair in pairs:
            letters = pset[rng.integers(0, len(pset))]
            theta = rng.uniform(0.0, 2.0 * np.pi)
            if letters == "II":
                continue  # pure global phase
            circ.append(pauli_exp(pair, letters, theta))
    return circ
