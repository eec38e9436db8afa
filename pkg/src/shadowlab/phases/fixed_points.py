"""Fixed-point states and the string order parameter."""
from __future__ import annotations

from ..simcore import Circuit, PauliString, StateVector, cz, expectation, h, run_circuit, zero_state


def cluster_circuit(n: int, periodic: bool = True) -> Circuit:
    if n < 3:
        raise ValueError("cluster state needs at least 3 qubits")
    circ = Circuit(n)
    for q in range(n):
        circ.append(h(q))
    last = n if periodic else n - 1
    for q in range(last):
        circ.append(cz(q, (q + 1) % n))
    return circ


def prepare_cluster(n: int, periodic: bool = True) -> StateVector:
    """Graph state on a ring (or path): all Z_{i-1} X_i Z_{i+1} are +1."""
    state, _ = run_circuit(zero_state(n), cluster_circuit(n, periodic))
    return state


def prepare_product_x(n: int) -> StateVector:
    """|+>^n, the trivial-phase fixed point."""
    state = zero_state(n)
    circ = Circuit(n, [h(q) for q in range(n)])
    state, _ = run_circuit(state, circ)
    return state


def cluster_stabilizer(n: int, i: int) -> PauliString:
    return PauliString.from_sites(n, {(i - 1) % n: "Z", i: "X", (i + 1) % n: "Z"})


def sop(state: StateVector, a: int, b: int) -> float:
    """String order parameter Z_a X_{a+1} X_{a+3} ... X_{b-1} Z_b."""
    n = state.n_qubits
    if not 0 <= a < b < n:
        raise ValueError("need 0 <= a < b < n")
    if (b - a) % 2 != 0 or b - a < 2:
        raise ValueError("string length b - a must be even and >= 2")
    sites = {a: "Z", b: "Z"}
    for k in range(a + 1, b, 2):
        sites[k] = "X"
    return expectation(state, PauliString.from_sites(n, sites))
