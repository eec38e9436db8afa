"""Jordan-Wigner forms of site correlations for real states."""
from __future__ import annotations

from ..simcore import PauliString


def jw_observable(i: int, j: int, n: int) -> list[PauliString]:
    """Pauli decomposition of the Hermitian part of a_i^dag a_j.

    i == j: (1 - Z_i)/2.  i < j: (X_i Z...Z X_j + Y_i Z...Z Y_j)/4, which
    equals <a_i^dag a_j> on states with real amplitudes.
    """
    if not 0 <= i <= j < n:
        raise ValueError(f"need 0 <= i <= j < n, got ({i}, {j}) with n={n}")
    if i == j:
        return [
            PauliString("I" * n, 0.5),
            PauliString.from_sites(n, {i: "Z"}, -0.5),
        ]
    terms = []
    for letter in ("X", "Y"):
        sites = {i: letter, j: letter}
        for k in range(i + 1, j):
            sites[k] = "Z"
        terms.append(PauliString.from_sites(n, sites, 0.25))
    return terms
